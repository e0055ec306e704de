import pytest

from bettilab.algebra.groebner import buchberger, eliminate, saturate_by_variable, substitute_linear
from bettilab.algebra.polynomial import MonomialOrder, polynomial_ring, variable_names
from bettilab.exceptions import BettilabValueError, HomogeneityError

P3 = polynomial_ring(variable_names("x", 4))
TWISTED_CUBIC = ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]


@pytest.fixture
def twisted_cubic():
    return buchberger([P3.parse(text) for text in TWISTED_CUBIC])


class TestBuchberger:
    def test_reduced_basis(self, twisted_cubic):
        assert len(twisted_cubic) == 3
        assert twisted_cubic.is_groebner()
        assert twisted_cubic.is_reduced()

    def test_membership(self, twisted_cubic):
        assert twisted_cubic.contains(P3.parse("x0*x2 - x1^2"))
        assert twisted_cubic.contains(P3.parse("x0*(x1*x3 - x2^2)"))
        assert not twisted_cubic.contains(P3.parse("x0^2"))

    def test_normal_form_is_reduced(self, twisted_cubic):
        remainder = twisted_cubic.normal_form(P3.parse("x1^2"))
        assert remainder == twisted_cubic.normal_form(P3.parse("x0*x2"))
        assert all(
            P3.ring.monomial_div(m, lm) is None for m in remainder.monoms() for lm in twisted_cubic.leading_monomials
        )

    def test_standard_monomials(self, twisted_cubic):
        assert len(twisted_cubic.standard_monomials(0)) == 1
        assert len(twisted_cubic.standard_monomials(1)) == 4
        assert len(twisted_cubic.standard_monomials(2)) == 7
        assert len(twisted_cubic.standard_monomials(3)) == 10

    def test_independent_of_generator_order(self):
        forward = buchberger([P3.parse(text) for text in TWISTED_CUBIC])
        backward = buchberger([P3.parse(text) for text in reversed(TWISTED_CUBIC)])
        assert forward.lines() == backward.lines()

    def test_other_order(self):
        basis = buchberger([P3.parse(text) for text in TWISTED_CUBIC], order=MonomialOrder.elimination(1))
        assert basis.ring.order == MonomialOrder.elimination(1)
        assert basis.is_groebner()

    def test_rejects_inhomogeneous(self):
        with pytest.raises(HomogeneityError):
            buchberger([P3.parse("x0^2 - x1")])

    def test_empty_needs_ring(self):
        with pytest.raises(BettilabValueError):
            buchberger([])
        assert len(buchberger([], P3)) == 0


class TestElimination:
    def test_homogeneous(self):
        ring = polynomial_ring(("x", "y", "z"))
        result = eliminate([ring.parse("x - y"), ring.parse("y - z")], keep=["x", "z"])
        target = polynomial_ring(("x", "z"))
        assert result == [target.parse("x - z")]

    def test_affine_parametrization(self):
        ring = polynomial_ring(("t", "x", "y"))
        result = eliminate([ring.parse("x - t^2"), ring.parse("y - t^3")], keep=["x", "y"])
        target = polynomial_ring(("x", "y"))
        assert result
        for f in result:
            assert target.evaluate(f, [4, 8]) == 0
            assert target.evaluate(f, [9, 27]) == 0

    def test_unknown_variable(self):
        with pytest.raises(BettilabValueError):
            eliminate([P3.parse("x0")], keep=["y"])


class TestSubstitution:
    def test_substitute_linear(self):
        source = polynomial_ring(("x", "y", "z"))
        target = polynomial_ring(("u", "v"))
        mapping = {"x": target.parse("u"), "y": target.parse("u + v"), "z": target.parse("u - v")}
        assert substitute_linear([source.parse("x^2 - y*z")], mapping, target) == [target.parse("v^2")]

    def test_zero_images_are_dropped(self):
        source = polynomial_ring(("x", "y"))
        target = polynomial_ring(("u",))
        mapping = {"x": target.parse("u"), "y": target.parse("u")}
        assert substitute_linear([source.parse("x - y")], mapping, target) == []

    def test_nonlinear_image(self):
        source = polynomial_ring(("x",))
        target = polynomial_ring(("u",))
        with pytest.raises(HomogeneityError):
            substitute_linear([source.parse("x")], {"x": target.parse("u^2")}, target)


class TestSaturation:
    def test_saturate_by_variable(self):
        ring = polynomial_ring(("x", "y", "z"))
        result = saturate_by_variable([ring.parse("x*z"), ring.parse("y*z")], "z")
        assert sorted(ring.format(f) for f in result) == ["x", "y"]
