import importlib.metadata
import sys
from pathlib import Path

import click

from bettilab.catalog import CONSTRUCTORS, build, build_entry, catalog_entry
from bettilab.cli.commands import build_params, show_catalog, show_reports, show_table, show_trace
from bettilab.cli.utils import AliasedGroup, Console
from bettilab.enums import ExitCode, ModuleKind, OutputFormat, Theorem, Twist
from bettilab.exceptions import handle_exceptions
from bettilab.koszul import betti_table, betti_table_checked
from bettilab.models.model import EmbeddedModel, dump_model, load_model
from bettilab.models.settings import SessionConfig
from bettilab.projection import predict_and_check, random_subspace, undetermined_cells
from bettilab.settings import load_session, write_settings
from bettilab.utils import write_if_different
from bettilab.verify import reports_to_csv
from bettilab.verify import verify as run_verification


@click.group(cls=AliasedGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=importlib.metadata.version("bettilab"))
@click.option("--field", help="Field of the computation, 'q' or 'fp:<p>'.")
@click.option("--seed", type=click.IntRange(min=0), help="Global seed of the randomized constructions.")
@click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]), help="Output format.")
@click.option("--pmax", type=click.IntRange(min=0), help="Largest homological index p of the tables.")
@click.option("--qmax", type=click.IntRange(min=0), help="Largest weight q of the tables.")
@click.pass_context
def cli(
    ctx: click.Context,
    field: str | None,
    seed: int | None,
    output_format: str | None,
    pmax: int | None,
    qmax: int | None,
) -> None:
    """Koszul cohomology laboratory.

    Build embedded varieties, project them from general points, compute their Betti tables exactly and check the
    statements on syzygies and regularity instance by instance.
    """
    ctx.ensure_object(dict)
    ctx.obj["overrides"] = {"field": field, "seed": seed, "format": output_format, "p_max": pmax, "q_max": qmax}


def _emit_model(model: EmbeddedModel, output: Path | None) -> None:
    if output is None:
        click.echo(model.dumps(), nl=False)
    elif dump_model(model, output):
        Console().log(f"[green]Model written to '{output}'")
    else:
        Console().log(f"Model at '{output}' is up to date")


@cli.command()
@handle_exceptions
@load_session
def catalog(config: SessionConfig) -> None:
    """List the catalog of embedded varieties.\f

    Args:
        config: The effective session configuration.
    """
    show_catalog(config.format)


@cli.command(name="build")
@handle_exceptions
@click.argument("name")
@click.option("--a", "a", help="Parameter a; comma separated integers for scrolls.")
@click.option("--d", "d", type=int, help="Degree d.")
@click.option("--g", "g", type=int, help="Genus g.")
@click.option("--n", "n", type=int, help="Dimension n.")
@click.option("--r", "r", type=int, help="Dimension r of the projective space.")
@click.option("-o", "--output", type=Path, help="Model file to write, stdout if omitted.")
@load_session
def build_model(
    config: SessionConfig,
    name: str,
    a: str | None,
    d: int | None,
    g: int | None,
    n: int | None,
    r: int | None,
    output: Path | None,
) -> None:
    """Build a model from a constructor or a catalog entry and check its invariants.

    \b
    Example:
        ```sh
        bettilab build elliptic-normal-curve --d 5 -o e5.json
        bettilab build scroll --a 1,2
        bettilab build twisted-cubic
        ```
    \f

    Args:
        config: The effective session configuration.
        name: Constructor name or catalog entry name.
        a: Parameter a of rational normal curves and scrolls.
        d: Degree of elliptic and hyperelliptic curves.
        g: Genus of hyperelliptic curves.
        n: Dimension of quadric hypersurfaces.
        r: Dimension of projective spaces.
        output: Where to write the model file.
    """
    if name in CONSTRUCTORS:
        params = build_params(name, a=a, d=d, g=g, n=n, r=r)
        model = build(name, params, seed=config.seed, bound=config.coefficient_bound, max_reseeds=config.max_reseeds)
    else:
        model = build_entry(catalog_entry(name), seed=config.seed, bound=config.coefficient_bound)

    meta = model.metadata
    Console().log(f"{model.descriptor}: (n, d, e, g) = ({meta.n}, {meta.d}, {meta.e}, {meta.g}), seed {config.seed}")
    _emit_model(model, output)


@cli.command()
@handle_exceptions
@click.argument("model_file", type=Path)
@click.option("--t", "t", type=click.IntRange(min=1), required=True, help="Number of one-point projections.")
@click.option("--seed", "seed", type=click.IntRange(min=0), help="Seed of the centers, the global seed if omitted.")
@click.option("-o", "--output", type=Path, help="Model file to write, stdout if omitted.")
@click.option("--predict", is_flag=True, help="Predict every step's table and check it by direct computation.")
@load_session
def project(
    config: SessionConfig, model_file: Path, t: int, seed: int | None, output: Path | None, predict: bool
) -> None:
    """Project a model from t general points.

    \b
    Example:
        ```sh
        bettilab project e5.json --t 1 --seed 7 -o e5-t1.json
        ```
    \f

    Args:
        config: The effective session configuration.
        model_file: The model to project.
        t: Number of one-point projections.
        seed: Seed of the centers.
        output: Where to write the projected model file.
        predict: Whether to run the predictions alongside the projections.
    """
    seed = config.seed if seed is None else seed
    model = load_model(model_file)
    Console().log(f"projecting {model.descriptor} from {t} point(s), seed {seed}")

    if predict:
        projected, trace = predict_and_check(
            model,
            t,
            seed,
            field=config.ground_field,
            bound=config.coefficient_bound,
            max_reseeds=config.max_reseeds,
            strict=False,
        )
        show_trace(trace, config.format)
        if output is not None:
            _emit_model(projected, output)
        if trace.unexpected or trace.violations:
            sys.exit(ExitCode.conclusion_fail)
        return

    projected = random_subspace(model, t, seed, bound=config.coefficient_bound, max_reseeds=config.max_reseeds)
    _emit_model(projected, output)


@cli.command()
@handle_exceptions
@click.argument("model_file", type=Path)
@click.option("--twist", type=click.Choice([t.value for t in Twist]), default=Twist.zero.value, help="Twist B.")
@click.option(
    "--module",
    "kind",
    type=click.Choice([k.value for k in ModuleKind]),
    default=ModuleKind.section.value,
    help="Section module over V or coordinate ring over all linear forms.",
)
@load_session
def betti(config: SessionConfig, model_file: Path, twist: str, kind: str) -> None:
    """Compute the Betti table of a model.

    The pretty grid prints "." for zero cells, the dimension for nonzero cells and "?" for the cells the shape theorem
    leaves open on projected models.
    \f

    Args:
        config: The effective session configuration.
        model_file: The model file.
        twist: Twist of the section module.
        kind: Kind of the module.
    """
    model = load_model(model_file)
    field = config.ground_field
    options = {"twist": Twist(twist), "kind": ModuleKind(kind), "p_max": config.p_max, "q_max": config.q_max}
    if config.recheck_over_q and not field.is_rational:
        table, _ = betti_table_checked(model, field, **options)
    else:
        table = betti_table(model, field=field, **options)

    if config.format == OutputFormat.pretty and table.twist == Twist.zero and table.kind == ModuleKind.section:
        table = table.with_undetermined([cell for cell in undetermined_cells(model) if cell in table])
    Console().log(f"seed chain {table.seed_chain or [config.seed]}")
    show_table(table, config.format)


@cli.command()
@handle_exceptions
@click.argument("model_file", type=Path)
@click.option("--theorem", type=click.Choice([t.value for t in Theorem]), required=True, help="Statement to check.")
@click.option("--k", "k", type=click.IntRange(min=0), help="Index k of the N_k check.")
@load_session
def verify(config: SessionConfig, model_file: Path, theorem: str, k: int | None) -> None:
    """Check a statement on one model and exit with its status.

    \b
    Exit codes:
        0 pass, 2 hypothesis not met, 3 conclusion fails, 4 inconclusive, 1 usage
    \f

    Args:
        config: The effective session configuration.
        model_file: The model file.
        theorem: Which statement to check.
        k: Index of the N_k check.
    """
    model = load_model(model_file)
    report = run_verification(model, Theorem(theorem), field=config.ground_field, k=k, seed=config.seed)
    show_reports([report], config.format)
    sys.exit(report.exit_code)


@cli.command()
@handle_exceptions
@click.argument("model_files", nargs=-1, required=True, type=Path)
@click.option(
    "--theorem",
    "theorems",
    multiple=True,
    required=True,
    type=click.Choice([t.value for t in Theorem]),
    help="Statement to check, may be repeated.",
)
@click.option("--k", "k", type=click.IntRange(min=0), help="Index k of the N_k check.")
@click.option("-o", "--output", type=Path, help="Aggregate CSV to write.")
@load_session
def report(
    config: SessionConfig, model_files: tuple[Path, ...], theorems: tuple[str, ...], k: int | None, output: Path | None
) -> None:
    """Check several statements on several models and summarize them.

    Exits with the most severe status of all checks.
    \f

    Args:
        config: The effective session configuration.
        model_files: The model files.
        theorems: Which statements to check on every model.
        k: Index of the N_k checks.
        output: Where to write the aggregate CSV.
    """
    models = [load_model(file) for file in model_files]
    reports = [
        run_verification(model, Theorem(theorem), field=config.ground_field, k=k, seed=config.seed)
        for model in models
        for theorem in theorems
    ]
    if output is not None:
        write_if_different(output, reports_to_csv(reports))
        Console().log(f"[green]Summary written to '{output}'")
    show_reports(reports, config.format)
    sys.exit(max(item.exit_code for item in reports))


# -----------------
# bettilab settings
# -----------------


@cli.group(cls=AliasedGroup)
def settings() -> None:
    """Manage global settings.

    This group of commands allows you to display and edit the global settings.
    """


@settings.command(name="edit")
@handle_exceptions
def settings_edit() -> None:
    """Edit settings with the configured editor.

    This command opens the global settings file in the default editor and validates it once the editor is closed.
    If the settings file does not exist, it will be created first with the default values.
    """
    if not (path := SessionConfig.get_path()).is_file():
        write_settings(SessionConfig())
    click.edit(filename=str(path))
    SessionConfig.load_from(path)


@settings.command(name="show")
@handle_exceptions
@load_session
def settings_show(config: SessionConfig) -> None:
    """Display the effective settings, global flags included.\f

    Args:
        config: The effective session configuration.
    """
    Console().print_json(config.model_dump_json())


def entry_point() -> None:
    cli()
