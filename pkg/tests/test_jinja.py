import pytest

from bettilab.enums import Provenance, Theorem
from bettilab.exceptions import BettilabValueError
from bettilab.jinja import mark_filter, render_reports
from bettilab.models.report import CheckItem, VerificationReport


@pytest.mark.parametrize(
    "value,arg,expected",
    [
        (True, "ok,FAIL,n/a", "ok"),
        (False, "ok,FAIL,n/a", "FAIL"),
        (None, "ok,FAIL,n/a", "n/a"),
        (None, "ok,FAIL", "FAIL"),
    ],
)
def test_mark_filter(value, arg, expected):
    assert mark_filter(value, arg) == expected


def test_mark_filter_invalid_argument():
    with pytest.raises(BettilabValueError):
        mark_filter(True, "ok")


class TestRenderReports:
    @pytest.fixture
    def report(self):
        return VerificationReport.build(
            theorem=Theorem.thm13,
            model="rational-normal-curve(a=4) projected t=1",
            seed_chain=[11],
            hypotheses=[
                CheckItem(description="e ≥ g + 1", value=True, evidence="e = 2, g = 0"),
                CheckItem(description="X is smooth", value=True, provenance=Provenance.catalog),
            ],
            conclusions=[CheckItem(description="reg(X) ≤ 3", value=False, evidence="reg(X) = 4")],
            notes=["checked over Q"],
        )

    def test_render(self, report):
        text = render_reports([report])
        assert text.startswith("thm13 on rational-normal-curve(a=4) projected t=1: FAIL")
        assert "seeds: 11" in text
        assert "[ok] e ≥ g + 1 (e = 2, g = 0)" in text
        assert "[ok] X is smooth [catalog-asserted]" in text
        assert "[FAIL] reg(X) ≤ 3 (reg(X) = 4)" in text
        assert "note: checked over Q" in text
        assert "consistent with the statement" not in text

    def test_several_reports(self, report):
        assert render_reports([report, report]).count("thm13 on") == 2

    def test_template_type(self, report):
        with pytest.raises(BettilabValueError):
            render_reports([report], template="report.txt")
