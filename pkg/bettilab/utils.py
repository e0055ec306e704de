from pathlib import Path

import numpy as np
import ruamel.yaml
from pydantic import validate_call

YAML = ruamel.yaml.YAML(typ="safe", pure=True)


@validate_call
def write_if_different(file: Path, content: str) -> bool:
    """Writes content to file only if the content is different from the existing file content.

    Args:
        file: The path to the file.
        content: The content to write to the file.

    Returns:
        True if new content was written to the file, False otherwise.
    """
    if file.is_file() and file.stat().st_size == len(content.encode("utf-8")):
        if file.read_text(encoding="utf-8") == content:
            return False

    file.write_text(content, encoding="utf-8")
    return True


def derive_seed(seed: int, *labels: int) -> int:
    """Derive an independent 64-bit seed from a parent seed and a path of integer labels.

    The same parent seed and labels always give the same child seed, on every platform.

    Args:
        seed: The parent seed.
        *labels: Position of the child in the derivation tree (step index, reseed attempt, ...).

    Returns:
        A non-negative integer below 2**64.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=labels)
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def random_integers(seed: int, count: int, bound: int) -> list[int]:
    """Draw `count` integers uniformly from [-bound, bound] with a seeded generator.

    Args:
        seed: Seed of the generator.
        count: Number of integers to draw.
        bound: The bound B of the coefficient range.

    Returns:
        The list of drawn integers.
    """
    rng = np.random.default_rng(seed)
    return [int(x) for x in rng.integers(-bound, bound, size=count, endpoint=True)]
