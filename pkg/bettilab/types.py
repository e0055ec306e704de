from typing import Annotated

from annotated_types import Ge, Interval, Le
from pydantic import StringConstraints
from pydantic.functional_validators import AfterValidator
from sympy import isprime

__all__ = [
    "TypeSeed",
    "TypePrime",
    "TypeFieldSpec",
    "TypeVariableName",
    "TypeDimension",
    "TypeCount",
]


def _prime(value: int) -> int:
    if not isprime(value):
        raise ValueError(f"{value} is not a prime")
    return value


def _field_spec(value: str) -> str:
    if value != "q":
        _prime(int(value.removeprefix("fp:")))
    return value


TypeSeed = Annotated[int, Interval(ge=0, lt=2**64)]
"""Type for a seed of the pseudo random generator (unsigned 64-bit integer)."""


TypePrime = Annotated[int, Ge(2), AfterValidator(_prime)]
"""Type for the characteristic of a prime field."""


TypeFieldSpec = Annotated[
    str, StringConstraints(pattern=r"^(q|fp:[0-9]+)$", strict=True), AfterValidator(_field_spec)
]
"""Type for a field choice on the command line and in the settings.

The value is either `q` (the rationals) or `fp:<p>` with `p` a prime, e.g. `fp:32003`.
"""


TypeVariableName = Annotated[str, StringConstraints(pattern=r"^[a-z][a-z0-9_]{0,15}$", strict=True)]
"""Type for a variable name of a polynomial ring (`x0`, `x1`, ...)."""


TypeDimension = Annotated[int, Ge(0), Le(64)]
"""Type for dimensions and homological indices at desk scale."""


TypeCount = Annotated[int, Ge(0)]
"""Type for dimensions of vector spaces."""
