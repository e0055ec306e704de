import pytest
from pydantic import ValidationError
from sympy import QQ

from bettilab.algebra.field import DEFAULT_PRIME, GroundField
from bettilab.enums import FieldKind
from bettilab.exceptions import BettilabValueError


class TestGroundField:
    @pytest.mark.parametrize("spec,kind,prime", [("q", FieldKind.rational, None), ("fp:7", FieldKind.prime, 7)])
    def test_from_spec(self, spec, kind, prime):
        field = GroundField.from_spec(spec)
        assert field.kind == kind
        assert field.prime == prime
        assert field.spec == spec

    @pytest.mark.parametrize("spec", ["fp:10", "fp:", "fp:x", "r", "Q", "fp:-7"])
    def test_from_spec_invalid(self, spec):
        with pytest.raises(BettilabValueError):
            GroundField.from_spec(spec)

    def test_default_prime(self):
        assert GroundField.prime_field().prime == DEFAULT_PRIME == 32003

    def test_prime_required_exactly_for_prime_fields(self):
        with pytest.raises(ValidationError):
            GroundField(kind=FieldKind.rational, prime=7)
        with pytest.raises(ValidationError):
            GroundField(kind=FieldKind.prime)

    @pytest.mark.parametrize("field,text", [(GroundField.rationals(), "Q"), (GroundField.prime_field(5), "F_5")])
    def test_str(self, field, text):
        assert str(field) == text

    def test_convert_rational_into_prime_field(self):
        field = GroundField.prime_field(7)
        half = field.convert(QQ(1, 2))
        assert field.to_int(half) == 4
        assert field.to_int(field.convert(-1)) == 6

    def test_convert_non_invertible_denominator(self):
        with pytest.raises(BettilabValueError):
            GroundField.prime_field(7).convert(QQ(1, 7))

    def test_to_int_rational(self):
        field = GroundField.rationals()
        assert field.to_int(field.convert(-3)) == -3
        with pytest.raises(BettilabValueError):
            field.to_int(QQ(1, 2))
