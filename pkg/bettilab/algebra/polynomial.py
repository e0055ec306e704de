"""Graded polynomial rings with a fixed monomial order.

Polynomials are sympy `PolyElement`s; a `PolynomialRing` owns the sympy ring together with the variable names, the
ground field and the monomial order, and provides the plain-text syntax `3*x0^2*x1 - x2^3` used in model files.
"""

import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from functools import cache, cached_property
from itertools import combinations_with_replacement
from typing import Any, Self

from pydantic import model_validator
from sympy import QQ, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.orderings import MonomialOrder as SympyOrder
from sympy.polys.orderings import build_product_order, grevlex
from sympy.polys.rings import PolyElement, PolyRing

from bettilab.algebra.field import FieldScalar, GroundField
from bettilab.enums import OrderKind
from bettilab.exceptions import BettilabValueError, HomogeneityError
from bettilab.models.base import BettilabFrozenModel

Monomial = tuple[int, ...]
"""Exponent vector, one slot per variable."""

Polynomial = PolyElement

_POLYNOMIAL_TEXT = re.compile(r"^[a-z0-9_+\-*/^() ]*$")


class MonomialOrder(BettilabFrozenModel):
    """Monomial order: grevlex, or an elimination order with a grevlex block on the first `block` variables.

    Attributes:
        kind: The order variant.
        block: Number of leading variables forming the eliminated block (elimination orders only).
    """

    kind: OrderKind = OrderKind.grevlex
    block: int = 0

    @model_validator(mode="after")
    def block_only_for_elimination(self) -> Self:
        if (self.kind == OrderKind.elimination) != (self.block > 0):
            raise ValueError("a positive block size is required exactly for elimination orders")
        return self

    @classmethod
    def elimination(cls, block: int) -> "MonomialOrder":
        return cls(kind=OrderKind.elimination, block=block)

    def sympy_order(self, symbols: Sequence[Symbol]) -> SympyOrder:
        if self.kind == OrderKind.grevlex:
            return grevlex
        if self.block >= len(symbols):
            raise BettilabValueError("the eliminated block must leave at least one variable")
        head, tail = symbols[: self.block], symbols[self.block :]
        return build_product_order((("grevlex", *head), ("grevlex", *tail)), symbols)


class PolynomialRing:
    """Polynomial ring k[x_0, ..., x_r] over a `GroundField` with a fixed `MonomialOrder`.

    Use `polynomial_ring` to obtain instances; rings with equal parameters are shared, so that their elements are
    compatible.
    """

    def __init__(self, variables: tuple[str, ...], field: GroundField, order: MonomialOrder) -> None:
        if len(set(variables)) != len(variables):
            raise BettilabValueError(f"duplicate variable names in {variables}")
        self.variables = variables
        self.field = field
        self.order = order
        self.symbols = tuple(Symbol(v) for v in variables)
        self.ring: PolyRing = PolyRing(self.symbols, field.domain, order.sympy_order(self.symbols))

    def __repr__(self) -> str:
        return f"PolynomialRing({', '.join(self.variables)} over {self.field}, {self.order.kind.value})"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.ring.gens)

    @property
    def zero(self) -> Polynomial:
        return self.ring.zero

    @property
    def one(self) -> Polynomial:
        return self.ring.one

    def order_key(self, monomial: Monomial) -> Any:
        return self.ring.order(monomial)

    def monomial(self, exponents: Monomial, coefficient: int | FieldScalar = 1) -> Polynomial:
        return self.ring.from_dict({tuple(exponents): self.field.convert(coefficient)})

    def from_terms(self, terms: Mapping[Monomial, FieldScalar]) -> Polynomial:
        """Build a polynomial from coefficients already in `field.domain` (zeros are dropped)."""
        return self.ring.from_dict({m: c for m, c in terms.items() if c})

    def linear_form(self, coefficients: Sequence[int | FieldScalar]) -> Polynomial:
        if len(coefficients) != self.nvars:
            raise BettilabValueError(f"a linear form needs {self.nvars} coefficients, got {len(coefficients)}")
        terms = {}
        for i, c in enumerate(coefficients):
            exponents = [0] * self.nvars
            exponents[i] = 1
            terms[tuple(exponents)] = self.field.convert(c)
        return self.from_terms(terms)

    def monomials_of_degree(self, degree: int) -> list[Monomial]:
        """All monomials of the given degree, descending in the ring order."""
        if degree < 0:
            return []
        monomials = []
        for combo in combinations_with_replacement(range(self.nvars), degree):
            exponents = [0] * self.nvars
            for i in combo:
                exponents[i] += 1
            monomials.append(tuple(exponents))
        return sorted(monomials, key=self.order_key, reverse=True)

    def parse(self, text: str) -> Polynomial:
        """Parse one polynomial in the text syntax, e.g. `3*x0^2*x1 - x2^3`.

        Raises:
            BettilabValueError: If the text contains anything other than a polynomial in the ring variables.
        """
        if not _POLYNOMIAL_TEXT.match(text):
            raise BettilabValueError(f"invalid characters in polynomial {text!r}")
        try:
            expr = parse_expr(
                text,
                local_dict=dict(zip(self.variables, self.symbols, strict=True)),
                transformations=(*standard_transformations, convert_xor),
                evaluate=True,
            )
            rational = _rational_ring(self.variables).ring.from_expr(expr)
        except Exception as e:
            raise BettilabValueError(f"cannot parse polynomial {text!r}: {e}") from None
        return self.convert(rational)

    def parse_lines(self, text: str) -> list[Polynomial]:
        """Parse one polynomial per non-empty line."""
        return [self.parse(line) for line in text.splitlines() if line.strip()]

    def format(self, f: Polynomial) -> str:
        """Render a polynomial in the text syntax, terms descending in the ring order."""
        if not f:
            return "0"
        parts: list[str] = []
        for monomial, coefficient in f.terms():
            sign, magnitude = self._split_coefficient(coefficient)
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, monomial, strict=True) if e]
            if not factors:
                body = magnitude
            elif magnitude == "1":
                body = "*".join(factors)
            else:
                body = "*".join([magnitude, *factors])
            if not parts:
                parts.append(f"-{body}" if sign < 0 else body)
            else:
                parts.append(f"{'-' if sign < 0 else '+'} {body}")
        return " ".join(parts)

    def _split_coefficient(self, c: FieldScalar) -> tuple[int, str]:
        if self.field.is_rational:
            numerator, denominator = int(QQ.numer(c)), int(QQ.denom(c))
            text = str(abs(numerator)) if denominator == 1 else f"{abs(numerator)}/{denominator}"
            return (-1 if numerator < 0 else 1), text
        return 1, str(self.field.to_int(c))

    def convert(self, f: Polynomial, source: "PolynomialRing | None" = None) -> Polynomial:
        """Map a polynomial from another ring into this one, matching variables by name.

        Coefficients are converted into this ring's field (rationals reduce into prime fields).

        Raises:
            BettilabValueError: If `f` involves a variable this ring does not have.
        """
        source = source or _ring_of(f)
        positions = []
        for name in source.variables:
            positions.append(self.variables.index(name) if name in self.variables else None)
        terms: dict[Monomial, FieldScalar] = {}
        for monomial, coefficient in f.terms():
            exponents = [0] * self.nvars
            for slot, e in zip(positions, monomial, strict=True):
                if e == 0:
                    continue
                if slot is None:
                    raise BettilabValueError(f"cannot map {source.format(f)!r} into {self}")
                exponents[slot] += e
            value = coefficient if source.field == self.field else self.field.convert(coefficient)
            terms[tuple(exponents)] = terms.get(tuple(exponents), self.field.zero()) + value
        return self.from_terms(terms)

    def evaluate(self, f: Polynomial, point: Sequence[int | FieldScalar]) -> FieldScalar:
        """Evaluate `f` at a point given by one value per variable."""
        values = [self.field.convert(v) for v in point]
        total = self.field.zero()
        for monomial, coefficient in f.terms():
            term = coefficient
            for v, e in zip(values, monomial, strict=True):
                if e:
                    term *= v**e
            total += term
        return total


_RINGS: dict[int, PolynomialRing] = {}


@cache
def polynomial_ring(
    variables: tuple[str, ...], field: GroundField | None = None, order: MonomialOrder | None = None
) -> PolynomialRing:
    """Shared `PolynomialRing` for the given variables, field (default Q) and order (default grevlex)."""
    ring = PolynomialRing(variables, field or GroundField.rationals(), order or MonomialOrder())
    _RINGS[id(ring.ring)] = ring
    return ring


def _rational_ring(variables: tuple[str, ...]) -> PolynomialRing:
    return polynomial_ring(variables, GroundField.rationals(), MonomialOrder())


def _ring_of(f: Polynomial) -> PolynomialRing:
    try:
        return _RINGS[id(f.ring)]
    except KeyError:
        raise BettilabValueError("polynomial does not belong to a bettilab ring") from None


def ring_of(f: Polynomial) -> PolynomialRing:
    """The `PolynomialRing` owning a polynomial."""
    return _ring_of(f)


def variable_names(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(count))


def total_degree(f: Polynomial) -> int:
    """Total degree; -1 for the zero polynomial."""
    return max((sum(m) for m in f.monoms()), default=-1)


def is_homogeneous(f: Polynomial) -> bool:
    return len({sum(m) for m in f.monoms()}) <= 1


def check_homogeneous(polys: Iterable[Polynomial]) -> None:
    """Reject non-homogeneous input.

    Raises:
        HomogeneityError: If some polynomial is not homogeneous.
    """
    for f in polys:
        if not is_homogeneous(f):
            raise HomogeneityError(f"polynomial {ring_of(f).format(f)!r} is not homogeneous")


def is_linear_form(f: Polynomial) -> bool:
    return all(sum(m) == 1 for m in f.monoms())


def iter_variables_used(f: Polynomial) -> Iterator[int]:
    """Indices of the variables occurring in `f`."""
    used: set[int] = set()
    for m in f.monoms():
        used.update(i for i, e in enumerate(m) if e)
    yield from sorted(used)
