import pytest

from bettilab.algebra.field import GroundField
from bettilab.catalog import scroll
from bettilab.enums import Provenance, Theorem, VerificationStatus
from bettilab.exceptions import BettilabValueError, UnsupportedModelError
from bettilab.models.model import EmbeddedModel, ModelMetadata
from bettilab.verify import (
    VERIFIERS,
    reports_to_csv,
    run_suite,
    verify,
    verify_green_duality,
    verify_minimal_degree,
    verify_thm12_linearly_normal,
    verify_thm12_projected,
    verify_thm13_bound,
)


class TestMinimalDegree:
    def test_twisted_cubic(self, twisted_cubic):
        report = verify_minimal_degree(twisted_cubic)
        assert report.status == VerificationStatus.passed
        assert report.exit_code == 0

    def test_elliptic_quintic(self, elliptic_quintic):
        report = verify_minimal_degree(elliptic_quintic)
        assert report.status == VerificationStatus.passed
        assert "reg(X) = 3" in report.conclusions[0].evidence


class TestLinearlyNormal:
    def test_passes(self, twisted_cubic):
        report = verify_thm12_linearly_normal(twisted_cubic, 1)
        assert report.status == VerificationStatus.passed
        assert report.notes == ["largest k with N_k within the table: 3"]

    def test_k_too_large(self, twisted_cubic):
        report = verify_thm12_linearly_normal(twisted_cubic, 3)
        assert report.status == VerificationStatus.hypothesis_not_met
        assert report.exit_code == 2
        assert report.conclusions == []

    def test_projected_model(self, projected_quartic):
        report = verify_thm12_linearly_normal(projected_quartic, 0)
        assert report.status == VerificationStatus.hypothesis_not_met

    def test_catalog_items(self, twisted_cubic):
        report = verify_thm12_linearly_normal(twisted_cubic, 1)
        assert {item.provenance for item in report.hypotheses} == {Provenance.computed, Provenance.catalog}

    def test_negative_k(self, twisted_cubic):
        with pytest.raises(BettilabValueError):
            verify_thm12_linearly_normal(twisted_cubic, -1)


class TestProjected:
    def test_elliptic_quintic(self, projected_quintic):
        report = verify_thm12_projected(projected_quintic)
        assert report.status == VerificationStatus.passed
        assert len(report.conclusions) == 6

    def test_linearly_normal_model(self, elliptic_quintic):
        assert verify_thm12_projected(elliptic_quintic).status == VerificationStatus.hypothesis_not_met

    def test_needs_gonality(self, twisted_cubic):
        model = EmbeddedModel(
            name="curve",
            params={},
            ambient=3,
            variables=twisted_cubic.variables,
            generators=twisted_cubic.generators,
            metadata=ModelMetadata(n=1, d=3, e=2, g=0),
        )
        with pytest.raises(UnsupportedModelError):
            verify_thm12_projected(model)


class TestRegularityBound:
    def test_projected_quartic(self, projected_quartic):
        report = verify_thm13_bound(projected_quartic)
        assert report.status == VerificationStatus.passed
        assert [item.value for item in report.conclusions] == [True, True, True]

    def test_linearly_normal_model(self, twisted_cubic):
        report = verify_thm13_bound(twisted_cubic)
        assert report.status == VerificationStatus.hypothesis_not_met
        assert report.notes == ["reg(X) = 2, d - e + 1 - g = 2", "linearly normal: reg(X) > d - e + 1 - g is False"]


class TestCurveSections:
    def test_scroll(self):
        report = verify(scroll([1, 2]), Theorem.prop33, seed=3)
        assert report.status == VerificationStatus.passed

    def test_curve(self, twisted_cubic):
        assert verify(twisted_cubic, Theorem.prop33).status == VerificationStatus.hypothesis_not_met


class TestDuality:
    def test_elliptic_quintic(self, elliptic_quintic):
        report = verify_green_duality(elliptic_quintic)
        assert report.status == VerificationStatus.passed
        assert len(report.conclusions) == 4

    def test_rational_curve(self, twisted_cubic):
        assert verify_green_duality(twisted_cubic).status == VerificationStatus.hypothesis_not_met


class TestFields:
    def test_prime_field(self, twisted_cubic):
        report = verify(twisted_cubic, Theorem.fields, field=GroundField.prime_field(101))
        assert report.status == VerificationStatus.passed
        assert len(report.conclusions) == 2

    def test_rationals(self, twisted_cubic):
        report = verify(twisted_cubic, Theorem.fields, field=GroundField.rationals())
        assert report.status == VerificationStatus.hypothesis_not_met


class TestSuite:
    def test_every_theorem_has_a_verifier(self):
        assert set(VERIFIERS) == set(Theorem)

    def test_nk_needs_k(self, twisted_cubic):
        with pytest.raises(BettilabValueError):
            verify(twisted_cubic, Theorem.thm12ln)

    def test_run_suite(self, twisted_cubic):
        reports = run_suite([(twisted_cubic, Theorem.minimal_degree), (twisted_cubic, Theorem.duality)])
        assert [report.status for report in reports] == [
            VerificationStatus.passed,
            VerificationStatus.hypothesis_not_met,
        ]

    def test_reproducible(self, twisted_cubic):
        first = verify(twisted_cubic, Theorem.thm12ln, k=1)
        second = verify(twisted_cubic, Theorem.thm12ln, k=1)
        assert first.same_outcome(second)

    def test_csv(self, twisted_cubic):
        reports = run_suite([(twisted_cubic, Theorem.minimal_degree), (twisted_cubic, Theorem.duality)])
        lines = reports_to_csv(reports).splitlines()
        assert lines[0] == "theorem,model,seed_chain,status,hypotheses,conclusions,failed,timing"
        assert len(lines) == 3
        assert lines[1].startswith("minimal-degree,rational-normal-curve(a=3),,pass,2,2,,")
        assert lines[2].startswith("duality,rational-normal-curve(a=3),,hypothesis-not-met,")
