"""Seeded acceptance batches over the catalog; every instance is checked exactly."""

import pytest

from bettilab.algebra.field import GroundField
from bettilab.catalog import (
    elliptic_normal_curve,
    hyperelliptic_curve,
    quadric_hypersurface,
    rational_normal_curve,
    scroll,
    veronese_surface,
)
from bettilab.enums import Theorem, VerificationStatus
from bettilab.koszul import KoszulComplex, betti_table, make_module, nk_threshold
from bettilab.projection import (
    build_ev_matrix,
    diagram_commutes,
    is_general_center,
    predict_and_check,
    random_subspace,
)
from bettilab.utils import derive_seed
from bettilab.verify import verify

pytestmark = pytest.mark.slow

PRIME = GroundField.prime_field(32003)

MINIMAL_DEGREE = {
    **{f"rational-normal-curve-{a}": (rational_normal_curve, (a,)) for a in range(2, 6)},
    "scroll-1-1": (scroll, ([1, 1],)),
    "scroll-1-2": (scroll, ([1, 2],)),
    "scroll-2-2": (scroll, ([2, 2],)),
    "veronese-surface": (veronese_surface, ()),
    **{f"quadric-{n}": (quadric_hypersurface, (n,)) for n in range(1, 4)},
}


@pytest.mark.parametrize("name", MINIMAL_DEGREE)
def test_minimal_degree(name):
    constructor, args = MINIMAL_DEGREE[name]
    model = constructor(*args)
    assert verify(model, Theorem.minimal_degree, field=PRIME).status == VerificationStatus.passed
    assert verify(model, Theorem.fields, field=PRIME).status == VerificationStatus.passed


@pytest.mark.parametrize("d", [4, 5, 6, 7])
def test_elliptic_normal_curves_satisfy_nk(d):
    model = elliptic_normal_curve(d, seed=0)
    e = model.metadata.e
    assert verify(model, Theorem.thm12ln, field=PRIME, k=e - 1).status == VerificationStatus.passed
    assert nk_threshold(betti_table(model, field=PRIME, p_max=e)) == e - 1


@pytest.mark.parametrize("d", [7, 8])
def test_genus_two_curves_satisfy_nk(d):
    model = hyperelliptic_curve(2, d, seed=0)
    e = model.metadata.e
    assert verify(model, Theorem.thm12ln, field=PRIME, k=e - 2).status == VerificationStatus.passed


@pytest.mark.parametrize("d,t", [(5, 1), (6, 1), (6, 2)])
def test_projected_elliptic_curves(d, t):
    model = elliptic_normal_curve(d, seed=0)
    projected, trace = predict_and_check(model, t, seed=1, field=PRIME)
    assert trace.unexpected == 0
    assert trace.violations == []
    for theorem in (Theorem.thm12proj, Theorem.thm13):
        assert verify(projected, theorem, field=PRIME).status == VerificationStatus.passed


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize(
    "constructor,args",
    [(scroll, ([1, 2],)), (scroll, ([2, 2],)), (veronese_surface, ()), (quadric_hypersurface, (2,))],
    ids=["scroll-1-2", "scroll-2-2", "veronese-surface", "quadric-2"],
)
def test_curve_sections(constructor, args, seed):
    report = verify(constructor(*args), Theorem.prop33, field=PRIME, seed=seed)
    assert report.status == VerificationStatus.passed


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize(
    "constructor,args",
    [
        (rational_normal_curve, (4,)),
        (rational_normal_curve, (5,)),
        (elliptic_normal_curve, (5,)),
        (elliptic_normal_curve, (6,)),
    ],
    ids=["rational-quartic", "rational-quintic", "elliptic-quintic", "elliptic-sextic"],
)
def test_one_point_projections(constructor, args, seed):
    model = constructor(*args)
    projected, trace = predict_and_check(model, 1, seed=seed, field=PRIME, strict=False)
    assert trace.unexpected == 0
    assert trace.violations == []

    parent = KoszulComplex(make_module(model, field=PRIME, q_max=2))
    child = KoszulComplex(make_module(projected, field=PRIME, q_max=2))
    center, seed_of_step = projected.chain[-1].center, projected.chain[-1].seed
    assert all(diagram_commutes(parent, child, p, 1, center) for p in range(1, parent.dim_space + 1))
    for p in range(2, parent.dim_space + 1):
        if parent.dimension(p, 1) == 0:
            continue
        ev = build_ev_matrix(parent, p, 1)
        assert ev.is_injective()
        assert (ev.rank_at(center) == ev.shape[0]) == (child.dimension(p, 1) == 0)
        consulted = p <= child.dim_space and parent.dimension(p - 1, 1) >= parent.dimension(p, 1)
        if consulted and seed_of_step not in trace.rejected_seeds:
            assert is_general_center(ev, center, derive_seed(seed_of_step, p, 1))


@pytest.mark.parametrize("d", [5, 6])
def test_green_duality(d):
    model = elliptic_normal_curve(d, seed=0)
    assert verify(model, Theorem.duality, field=GroundField.rationals()).status == VerificationStatus.passed


def test_projection_is_reproducible():
    model = elliptic_normal_curve(5, seed=0)
    assert random_subspace(model, 2, seed=3).dumps() == random_subspace(model, 2, seed=3).dumps()
