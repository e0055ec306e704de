cli_aliases: dict[str, str] = {
    # Resolve ambiguous command prefixes
    "b": "betti",
    "v": "verify",
    "r": "report",
    "ls": "catalog",
}
