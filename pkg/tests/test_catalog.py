import pytest

from bettilab.catalog import (
    CONSTRUCTORS,
    RANDOMIZED,
    Invariants,
    build,
    build_entry,
    catalog_entries,
    catalog_entry,
    check_invariants,
    check_parametrization,
    curve_section,
    elliptic_normal_curve,
    hyperelliptic_curve,
    invariants,
    projective_space,
    quadric_hypersurface,
    rational_normal_curve,
    scroll,
    veronese_surface,
)
from bettilab.enums import CaseTag
from bettilab.exceptions import BettilabValueError, IntegrityError
from bettilab.models.model import EmbeddedModel, ModelMetadata


class TestConstructors:
    @pytest.mark.parametrize("a", [2, 3, 4, 5])
    def test_rational_normal_curve(self, a):
        model = rational_normal_curve(a)
        assert model.ambient == a
        assert len(model.generators) == a * (a - 1) // 2
        assert invariants(model) == Invariants(n=1, d=a, e=a - 1, g=0)

    @pytest.mark.parametrize("a", [1, 10])
    def test_rational_normal_curve_range(self, a):
        with pytest.raises(BettilabValueError):
            rational_normal_curve(a)

    @pytest.mark.parametrize(
        "a,expected",
        [([1, 1], Invariants(n=2, d=2, e=1, g=0)), ([1, 2], Invariants(n=2, d=3, e=2, g=0))],
    )
    def test_scroll(self, a, expected):
        model = scroll(a)
        assert model.params == {"a": a}
        assert check_invariants(model) == expected

    @pytest.mark.parametrize("a", [[0, 1], [3], [], [4, 5]])
    def test_scroll_invalid(self, a):
        with pytest.raises(BettilabValueError):
            scroll(a)

    def test_veronese_surface(self):
        model = veronese_surface()
        assert model.ambient == 5
        assert len(model.generators) == 6
        assert check_invariants(model) == Invariants(n=2, d=4, e=3, g=0)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_quadric_hypersurface(self, n):
        model = quadric_hypersurface(n)
        assert model.hilbert_polynomial.degree == 2
        assert model.hilbert_polynomial.dimension == n

    def test_quadric_hypersurface_range(self):
        with pytest.raises(BettilabValueError):
            quadric_hypersurface(8)

    def test_projective_space(self):
        model = projective_space(2)
        assert model.generators == []
        assert model.hilbert_function(2) == 6
        with pytest.raises(BettilabValueError):
            projective_space(0)

    def test_elliptic_normal_curve(self, elliptic_quintic):
        meta = elliptic_quintic.metadata
        assert (meta.n, meta.d, meta.e, meta.g, meta.gonality) == (1, 5, 3, 1, 2)
        assert meta.positive
        assert elliptic_quintic.curve is not None
        assert len(elliptic_quintic.seed_chain) == 1
        check_parametrization(elliptic_quintic)

    def test_elliptic_normal_curve_is_deterministic(self, elliptic_quintic):
        assert elliptic_normal_curve(5, seed=0).dumps() == elliptic_quintic.dumps()

    @pytest.mark.parametrize("d", [3, 8])
    def test_elliptic_normal_curve_range(self, d):
        with pytest.raises(BettilabValueError):
            elliptic_normal_curve(d)

    @pytest.mark.parametrize("g,d", [(1, 7), (2, 6), (2, 9)])
    def test_hyperelliptic_curve_range(self, g, d):
        with pytest.raises(BettilabValueError):
            hyperelliptic_curve(g, d)

    @pytest.mark.slow
    def test_hyperelliptic_curve(self):
        model = hyperelliptic_curve(2, 7, seed=3)
        meta = model.metadata
        assert (meta.n, meta.d, meta.e, meta.g) == (1, 7, 4, 2)
        assert meta.positive
        check_invariants(model)


class TestBuild:
    def test_registry(self):
        assert RANDOMIZED <= set(CONSTRUCTORS)
        assert all("_" not in name for name in CONSTRUCTORS)

    def test_build(self):
        model = build("scroll", {"a": [1, 2]})
        assert model.descriptor == "scroll(a=1,2)"

    def test_unknown_constructor(self):
        with pytest.raises(BettilabValueError, match="unknown constructor"):
            build("k3-surface", {})

    def test_invalid_parameters(self):
        with pytest.raises(BettilabValueError, match="invalid parameters"):
            build("rational-normal-curve", {"d": 3})

    def test_metadata_contradiction(self, twisted_cubic):
        wrong = EmbeddedModel(
            name="rational-normal-curve",
            params={"a": 3},
            ambient=3,
            variables=twisted_cubic.variables,
            generators=twisted_cubic.generators,
            metadata=ModelMetadata(n=1, d=4, e=2, g=0),
        )
        with pytest.raises(IntegrityError):
            check_invariants(wrong)


class TestCatalog:
    def test_entries(self):
        entries = catalog_entries()
        names = [entry.name for entry in entries]
        assert len(names) == len(set(names))
        assert {"twisted-cubic", "elliptic-quintic", "veronese-surface"} <= set(names)
        assert all(entry.constructor in CONSTRUCTORS for entry in entries)

    def test_entry(self):
        entry = catalog_entry("twisted-cubic")
        assert entry.constructor == "rational-normal-curve"
        assert entry.expected == Invariants(n=1, d=3, e=2, g=0)
        assert entry.case == CaseTag.reg1

    def test_missing_entry(self):
        with pytest.raises(BettilabValueError, match="no catalog entry"):
            catalog_entry("k3-surface")

    @pytest.mark.slow
    @pytest.mark.parametrize("entry", catalog_entries(), ids=lambda entry: entry.name)
    def test_build_entry(self, entry):
        model = build_entry(entry)
        meta = model.metadata
        assert Invariants(n=meta.n, d=meta.d, e=meta.e, g=meta.g) == entry.expected


class TestCurveSection:
    def test_section_of_scroll(self):
        section = curve_section(scroll([1, 2]), seed=2)
        assert section.ambient == 3
        assert section.metadata.n == 1
        hp = section.hilbert_polynomial
        assert (hp.dimension, hp.degree, hp.genus) == (1, 3, 0)

    def test_section_of_veronese(self):
        hp = curve_section(veronese_surface(), seed=5).hilbert_polynomial
        assert (hp.degree, hp.genus) == (4, 0)

    def test_deterministic(self):
        assert curve_section(scroll([1, 1]), seed=9).dumps() == curve_section(scroll([1, 1]), seed=9).dumps()

    def test_curve_has_no_section(self, twisted_cubic):
        with pytest.raises(BettilabValueError):
            curve_section(twisted_cubic)
