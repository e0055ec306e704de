"""Curves y² = f(x) with deg f = 2g + 1 and their embeddings by |d·P∞|.

The point at infinity P∞ is the only pole of x (order 2) and y (order 2g + 1). Every function regular away from P∞
is uniquely a(x) + b(x)·y, so L(k·P∞) has the monomial basis x^i·y^j (j ≤ 1, 2i + j(2g+1) ≤ k).
For g = 1 this is the Weierstrass model of an elliptic curve and K = 0; for g ≥ 2 the canonical divisor is
K = (2g - 2)·P∞.
"""

from functools import cached_property

from sympy import Poly, Symbol

from bettilab.algebra.field import GroundField
from bettilab.algebra.groebner import buchberger, eliminate, saturate_by_variable
from bettilab.algebra.polynomial import Monomial, MonomialOrder, Polynomial, PolynomialRing, polynomial_ring
from bettilab.algebra.sparse import Vector
from bettilab.exceptions import BettilabValueError, IntegrityError
from bettilab.models.model import CurveData
from bettilab.utils import derive_seed, random_integers

_X = Symbol("x")


class FunctionField:
    """Arithmetic in the coordinate ring k[x, y]/(y² - f) of the affine part of a curve.

    Monomials are exponent pairs `(j, i)` for y^j·x^i; polynomials live in a ring ordered so that reducing by
    y² - f removes every y² factor.
    """

    def __init__(self, curve: CurveData, field: GroundField | None = None) -> None:
        self.curve = curve
        self.genus = curve.genus
        self.field = field or GroundField.rationals()
        self.ring: PolynomialRing = polynomial_ring(("y", "x"), self.field, MonomialOrder.elimination(1))
        y, x = self.ring.gens
        f = sum((self.ring.monomial((0, i), c) for i, c in enumerate(curve.f) if c), self.ring.zero)
        self.relation = y**2 - f

    def pole_order(self, monomial: Monomial) -> int:
        j, i = monomial
        return 2 * i + j * (2 * self.genus + 1)

    def basis(self, k: int) -> list[Monomial]:
        """Monomial basis of L(k·P∞), ascending pole order; empty for k < 0."""
        if k < 0:
            return []
        monomials = [(0, i) for i in range(k // 2 + 1)]
        monomials += [(1, i) for i in range((k - 2 * self.genus - 1) // 2 + 1) if self.pole_order((1, i)) <= k]
        return sorted(monomials, key=self.pole_order)

    def dimension(self, k: int) -> int:
        return len(self.basis(k))

    def element(self, monomial: Monomial) -> Polynomial:
        return self.ring.monomial(monomial)

    def reduce(self, f: Polynomial) -> Polynomial:
        return f.rem([self.relation])

    def coordinates(self, f: Polynomial, k: int) -> Vector:
        """Coordinates of a function in the basis of L(k·P∞).

        Raises:
            IntegrityError: If the function has a pole of order larger than k.
        """
        index = {m: i for i, m in enumerate(self.basis(k))}
        vector: Vector = {}
        for monomial, coefficient in self.reduce(f).terms():
            if monomial not in index:
                raise IntegrityError(f"function has a pole of order {self.pole_order(monomial)} > {k} at infinity")
            vector[index[monomial]] = coefficient
        return vector

    @cached_property
    def canonical_order(self) -> int:
        """Degree of K as a multiple of P∞."""
        return 2 * self.genus - 2


def embedding_monomials(curve: CurveData) -> list[Monomial]:
    """The coordinates x0, ..., xr of the embedding by |d·P∞|, as monomials (j, i) for y^j·x^i."""
    return FunctionField(curve).basis(curve.degree)


def curve_generators(curve: CurveData, variables: tuple[str, ...]) -> list[Polynomial]:
    """Ideal of the image of the curve under |d·P∞|, by elimination from the plane model.

    The graph of the map in the chart x0 ≠ 0 is homogenized with x0, the plane coordinates are eliminated and the
    result is saturated by x0, which gives the ideal of the projective closure. The reduced Gröbner basis is returned.
    """
    monomials = embedding_monomials(curve)
    if len(variables) != len(monomials):
        raise BettilabValueError(f"the embedding needs {len(monomials)} coordinates")
    if monomials[0] != (0, 0):
        raise BettilabValueError("the first coordinate must be the constant function")

    graph = polynomial_ring(("u", "v", *variables))
    u, v, *z = graph.gens
    generators = []
    for zi, (j, i) in zip(z[1:], monomials[1:], strict=True):
        generators.append(zi * z[0] ** (i + j - 1) - u**i * v**j)
    top = 2 * curve.genus + 1
    plane = v**2 * z[0] ** (top - 2) - sum(
        (c * u**i * z[0] ** (top - i) for i, c in enumerate(curve.f) if c), graph.zero
    )
    generators.append(plane)

    projected = eliminate(generators, keep=variables)
    saturated = saturate_by_variable(projected, variables[0])
    return list(buchberger(saturated).polys)


def random_curve(genus: int, degree: int, seed: int, bound: int) -> CurveData:
    """A curve y² = f(x) with f monic, squarefree, of degree 2g + 1 and seeded integer coefficients in [-B, B].

    The coefficient of x^(2g) is zero. Seeds whose polynomial is not squarefree are skipped deterministically.
    """
    attempt = 0
    while True:
        f = [*random_integers(derive_seed(seed, attempt), 2 * genus, bound), 0, 1]
        if Poly(list(reversed(f)), _X).discriminant() != 0:
            return CurveData(genus=genus, degree=degree, f=f)
        attempt += 1
