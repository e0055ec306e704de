"""Ground fields of all computations.

Scalars are elements of a sympy domain: `QQ` for the rationals (lowest terms, positive denominator) or a prime field
`GF(p)` with residues in `[0, p)`. The default prime for fast computations is p = 32003.
"""

from functools import cached_property
from typing import Any, Self

from pydantic import model_validator
from sympy import QQ, ZZ, FiniteField
from sympy.polys.domains.domain import Domain

from bettilab.enums import FieldKind
from bettilab.exceptions import BettilabValueError
from bettilab.models.base import BettilabFrozenModel
from bettilab.types import TypeFieldSpec, TypePrime

DEFAULT_PRIME = 32003

FieldScalar = Any
"""An element of `GroundField.domain`."""


class GroundField(BettilabFrozenModel):
    """Field of coefficients: the rationals or a prime field.

    Attributes:
        kind: Rational or prime field.
        prime: The characteristic of the prime field, None for the rationals.
    """

    kind: FieldKind
    prime: TypePrime | None = None

    @model_validator(mode="after")
    def prime_iff_prime_field(self) -> Self:
        if (self.kind == FieldKind.prime) != (self.prime is not None):
            raise ValueError("a prime is required exactly for prime fields")
        return self

    @classmethod
    def rationals(cls) -> "GroundField":
        return cls(kind=FieldKind.rational)

    @classmethod
    def prime_field(cls, prime: int = DEFAULT_PRIME) -> "GroundField":
        return cls(kind=FieldKind.prime, prime=prime)

    @classmethod
    def from_spec(cls, spec: TypeFieldSpec) -> "GroundField":
        """Parse the command line notation `q` or `fp:<p>`.

        Args:
            spec: The field specification.

        Returns:
            The corresponding field.

        Raises:
            BettilabValueError: If the specification is malformed or p is not a prime.
        """
        if spec == "q":
            return cls.rationals()
        if not spec.startswith("fp:") or not spec[3:].isdigit():
            raise BettilabValueError(f"invalid field specification {spec!r}, use 'q' or 'fp:<prime>'")
        try:
            return cls.prime_field(int(spec[3:]))
        except ValueError as e:
            raise BettilabValueError(f"invalid field specification {spec!r}: {e}") from None

    @property
    def spec(self) -> str:
        return "q" if self.prime is None else f"fp:{self.prime}"

    @property
    def is_rational(self) -> bool:
        return self.kind == FieldKind.rational

    @cached_property
    def domain(self) -> Domain:
        if self.prime is None:
            return QQ
        return FiniteField(self.prime, symmetric=False)

    def __str__(self) -> str:
        return "Q" if self.prime is None else f"F_{self.prime}"

    def zero(self) -> FieldScalar:
        return self.domain.zero

    def one(self) -> FieldScalar:
        return self.domain.one

    def convert(self, value: int | FieldScalar) -> FieldScalar:
        """Map an integer or a rational (element of `QQ`) into this field.

        Args:
            value: Python/sympy integer or an element of `QQ`.

        Returns:
            The corresponding field element.

        Raises:
            BettilabValueError: If the denominator vanishes modulo the characteristic.
        """
        if isinstance(value, int):
            return self.domain.convert(value)
        if self.prime is None:
            return QQ.convert(value)
        numerator, denominator = int(QQ.numer(value)), int(QQ.denom(value))
        if denominator % self.prime == 0:
            raise BettilabValueError(f"denominator {denominator} is not invertible in {self}")
        return self.domain.convert(numerator) / self.domain.convert(denominator)

    def to_int(self, value: FieldScalar) -> int:
        """Integer representative: the residue in [0, p) for prime fields; integral rationals only for Q."""
        if self.prime is None:
            if QQ.denom(value) != 1:
                raise BettilabValueError(f"{value} is not an integer")
            return int(QQ.numer(value))
        return int(self.domain.to_int(value)) % self.prime

    def from_integer_domain(self, value: Any) -> FieldScalar:
        """Convert an element of `ZZ` into this field."""
        return self.convert(int(ZZ.convert(value)))
