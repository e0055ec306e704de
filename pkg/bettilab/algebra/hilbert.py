"""Hilbert functions and Hilbert polynomials of homogeneous ideals.

Both are read off the leading-term ideal of a Gröbner basis: its Hilbert series is `N(t) / (1 - t)^n` with an integer
numerator `N`, computed by pivoting on variables.
"""

from collections.abc import Sequence
from functools import cache
from math import comb, factorial
from typing import NamedTuple

from sympy import ZZ, Poly, Symbol, interpolate

from bettilab.algebra.groebner import GroebnerBasis
from bettilab.algebra.polynomial import Monomial
from bettilab.exceptions import StabilizationError

_T = Symbol("t")
_M = Symbol("m")

INITIAL_WINDOW_CAP = 20
WINDOW_STEP = 10
WINDOW_CAP = 60
EXTRA_POINTS = 3


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b, strict=True))


def _minimal_generators(monomials: Sequence[Monomial]) -> tuple[Monomial, ...]:
    unique = sorted(set(monomials), key=lambda m: (sum(m), m))
    minimal: list[Monomial] = []
    for m in unique:
        if not any(_divides(g, m) for g in minimal):
            minimal.append(m)
    return tuple(sorted(minimal))


@cache
def _numerator(generators: tuple[Monomial, ...], nvars: int) -> Poly:
    if not generators:
        return Poly(1, _T, domain=ZZ)

    supports = [frozenset(i for i, e in enumerate(m) if e) for m in generators]
    if all(a.isdisjoint(b) for k, a in enumerate(supports) for b in supports[k + 1 :]):
        result = Poly(1, _T, domain=ZZ)
        for m in generators:
            result *= Poly(1 - _T ** sum(m), _T, domain=ZZ)
        return result

    # pivot on the variable shared by most generators with a mixed support
    counts = [0] * nvars
    for m, support in zip(generators, supports, strict=True):
        if len(support) > 1:
            for i in support:
                counts[i] += 1
    pivot = max(range(nvars), key=lambda i: (counts[i], -i))
    unit = tuple(1 if i == pivot else 0 for i in range(nvars))

    with_pivot = _minimal_generators([*generators, unit])
    colon = _minimal_generators([tuple(e - 1 if i == pivot and e else e for i, e in enumerate(m)) for m in generators])
    return _numerator(with_pivot, nvars) + Poly(_T, _T, domain=ZZ) * _numerator(colon, nvars)


def hilbert_numerator(leading: Sequence[Monomial], nvars: int) -> list[int]:
    """Coefficients c_0, c_1, ... of the numerator of the Hilbert series of `S / (leading)`.

    Args:
        leading: Generators of a monomial ideal (exponent vectors).
        nvars: Number of variables of S.

    Returns:
        The integer coefficients, lowest degree first.
    """
    poly = _numerator(_minimal_generators(leading), nvars)
    return [int(c) for c in reversed(poly.all_coeffs())]


def hilbert_function(G: GroebnerBasis, degree: int) -> int:
    """Dimension of the degree-d part of S/I, from the Hilbert series numerator of the leading-term ideal."""
    if degree < 0:
        return 0
    n = G.ring.nvars
    coefficients = hilbert_numerator(G.leading_monomials, n)
    return sum(c * comb(degree - i + n - 1, n - 1) for i, c in enumerate(coefficients) if degree >= i)


class HilbertPolynomial(NamedTuple):
    """Hilbert polynomial P(m) of S/I with its invariants.

    Attributes:
        poly: P as a polynomial in `m` over Q.
        dimension: Degree of P, the dimension of the projective scheme (-1 if P = 0).
        degree: Leading coefficient times dimension factorial.
    """

    poly: Poly
    dimension: int
    degree: int

    def __call__(self, m: int) -> int:
        return int(self.poly.eval(m))

    @property
    def genus(self) -> int:
        """Arithmetic genus 1 - P(0) of a curve."""
        return 1 - self(0)

    def __str__(self) -> str:
        return str(self.poly.as_expr())


def hilbert_polynomial(G: GroebnerBasis) -> HilbertPolynomial:
    """Interpolate the Hilbert polynomial from the Hilbert function on a window of degrees.

    The window starts after min(maxdeg · #generators, 20), takes one point per possible coefficient plus one, and is
    accepted once three further degrees agree with the interpolation; otherwise it is moved up.

    Raises:
        StabilizationError: If no window up to the cap agrees.
    """
    n = G.ring.nvars
    maxdeg = max((sum(m) for m in G.leading_monomials), default=0)
    start = min(maxdeg * len(G), INITIAL_WINDOW_CAP)
    points = n + 1

    while start <= WINDOW_CAP:
        samples = [(d, hilbert_function(G, d)) for d in range(start, start + points)]
        poly = Poly(interpolate(samples, _M), _M, domain="QQ")
        extra = range(start + points, start + points + EXTRA_POINTS)
        if all(poly.eval(d) == hilbert_function(G, d) for d in extra):
            return _invariants(poly)
        start += WINDOW_STEP
    raise StabilizationError(f"Hilbert function did not stabilize below degree {WINDOW_CAP}")


def _invariants(poly: Poly) -> HilbertPolynomial:
    if poly.is_zero:
        return HilbertPolynomial(poly=poly, dimension=-1, degree=0)
    dimension = poly.degree()
    degree = poly.LC() * factorial(dimension)
    return HilbertPolynomial(poly=poly, dimension=dimension, degree=int(degree))
