import pytest

from bettilab.algebra.groebner import buchberger
from bettilab.algebra.hilbert import hilbert_function, hilbert_numerator, hilbert_polynomial
from bettilab.algebra.polynomial import polynomial_ring, variable_names

P2 = polynomial_ring(variable_names("x", 3))
P3 = polynomial_ring(variable_names("x", 4))


class TestHilbertNumerator:
    @pytest.mark.parametrize(
        "leading,nvars,expected",
        [
            ([], 2, [1]),
            ([(2, 0)], 2, [1, 0, -1]),
            ([(1, 0), (0, 1)], 2, [1, -2, 1]),
        ],
    )
    def test_numerator(self, leading, nvars, expected):
        assert hilbert_numerator(leading, nvars) == expected


class TestHilbertFunction:
    def test_twisted_cubic(self):
        G = buchberger([P3.parse(t) for t in ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]])
        assert [hilbert_function(G, d) for d in range(5)] == [1, 4, 7, 10, 13]
        assert hilbert_function(G, -1) == 0

    def test_agrees_with_standard_monomials(self):
        G = buchberger([P2.parse("x0^3 + x1^3 + x2^3")])
        for d in range(6):
            assert hilbert_function(G, d) == len(G.standard_monomials(d))


class TestHilbertPolynomial:
    @pytest.mark.parametrize(
        "generators,ring,dimension,degree,genus",
        [
            ([], P2, 2, 1, None),
            (["x0^3 + x1^3 + x2^3"], P2, 1, 3, 1),
            (["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"], P3, 1, 3, 0),
            (["x0*x3 - x1*x2"], P3, 2, 2, None),
            (["x0", "x1", "x2"], P3, 0, 1, None),
        ],
    )
    def test_invariants(self, generators, ring, dimension, degree, genus):
        hp = hilbert_polynomial(buchberger([ring.parse(g) for g in generators], ring))
        assert hp.dimension == dimension
        assert hp.degree == degree
        if genus is not None:
            assert hp.genus == genus

    def test_values(self):
        hp = hilbert_polynomial(buchberger([], P2))
        assert [hp(m) for m in range(4)] == [1, 3, 6, 10]
