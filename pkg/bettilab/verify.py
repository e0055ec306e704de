"""Instance checks of the regularity and syzygy theorems, reported as hypothesis and conclusion checklists.

A passing report means the instance is consistent with the statement; hypotheses that cannot be computed (smoothness,
H¹(O_X) = 0, 2-regularity of O_X) come from the catalog metadata and are marked as such.
"""

import csv
import io
import time
from collections.abc import Callable, Iterable, Sequence

import humanize

from bettilab.algebra.field import GroundField
from bettilab.catalog import DEFAULT_BOUND, DEFAULT_RESEEDS, curve_section
from bettilab.cli.utils import Console
from bettilab.enums import ModuleKind, Provenance, Theorem, VerificationStatus
from bettilab.exceptions import BettilabValueError, InconclusiveError, UnsupportedModelError
from bettilab.koszul import (
    betti_table,
    betti_table_checked,
    default_p_max,
    green_duality_check,
    m_normality_defect,
    nk_property,
    nk_threshold,
    regularity_from_table,
)
from bettilab.models.betti import BettiTable
from bettilab.models.model import EmbeddedModel
from bettilab.models.report import CheckItem, VerificationReport
from bettilab.projection import undetermined_cells

Q_MAX = 3


def _catalog(description: str, value: bool) -> CheckItem:
    return CheckItem(description=description, value=value, evidence="catalog metadata", provenance=Provenance.catalog)


def _computed(description: str, value: bool, evidence: str = "") -> CheckItem:
    return CheckItem(description=description, value=value, evidence=evidence)


def _standard_hypotheses(model: EmbeddedModel) -> list[CheckItem]:
    """Smoothness, and H¹(O_X) = 0 for n ≥ 2."""
    meta = model.metadata
    items = [_catalog("X is smooth", meta.smooth)]
    if meta.n >= 2:
        items.append(_catalog("H¹(X, O_X) = 0", meta.h1_vanishes))
    return items


def _coordinate_table(model: EmbeddedModel, field: GroundField | None) -> BettiTable:
    return betti_table(model, kind=ModuleKind.coordinate, field=field, p_max=model.ambient + 1, q_max=Q_MAX)


def _cells(table: BettiTable, cells: Iterable[tuple[int, int]]) -> dict[tuple[int, int], int]:
    return {cell: table[cell] for cell in cells if cell in table}


def _report(
    theorem: Theorem,
    model: EmbeddedModel,
    start: float,
    hypotheses: list[CheckItem],
    conclusions: list[CheckItem],
    notes: list[str] | None = None,
    inconclusive: bool = False,
) -> VerificationReport:
    elapsed = time.perf_counter() - start
    report = VerificationReport.build(
        theorem=theorem,
        model=model.descriptor,
        seed_chain=model.seed_chain,
        hypotheses=hypotheses,
        conclusions=conclusions,
        notes=notes,
        inconclusive=inconclusive,
        timing=round(elapsed, 3),
    )
    color = "green" if report.status == VerificationStatus.passed else "yellow"
    Console().log(
        f"[{color}]{theorem.value} on {model.descriptor}: {report.status.value}[/{color}] "
        f"({humanize.precisedelta(elapsed, minimum_unit='milliseconds')})"
    )
    return report


def verify_minimal_degree(model: EmbeddedModel, field: GroundField | None = None) -> VerificationReport:
    """reg(X) = 2 exactly for the varieties of minimal degree d = e + 1.

    Both sides are decided on the instance; the report passes when they agree. Regularity 2 is read off the coordinate
    ring table (rows q ≥ 2 of S/I zero) together with 1-normality.
    """
    start = time.perf_counter()
    meta = model.metadata
    hypotheses = [
        _computed("X is not a linear space (e ≥ 1)", meta.e >= 1, f"e = {meta.e}"),
        _catalog("X is irreducible and nondegenerate", True),
    ]
    try:
        table = _coordinate_table(model, field)
        reg = regularity_from_table(table) + 1
    except InconclusiveError as e:
        return _report(Theorem.minimal_degree, model, start, hypotheses, [], notes=[str(e)], inconclusive=True)

    minimal = meta.d == meta.e + 1
    defect = m_normality_defect(model, 1, field=field)
    reg_two = reg == 2 and defect == 0
    conclusions = [
        _computed(
            "d = e + 1 if and only if reg(X) = 2",
            minimal == reg_two,
            f"d = {meta.d}, e = {meta.e}, reg(X) = {reg}, 1-normality defect = {defect}",
        ),
        _computed(
            "rows q ≥ 2 of the coordinate ring vanish exactly for minimal degree",
            minimal == all(table.row_is_zero(q) for q in range(2, table.q_max + 1)),
            f"last nonzero row {table.last_nonzero_row}",
        ),
    ]
    return _report(Theorem.minimal_degree, model, start, hypotheses, conclusions)


def verify_thm12_linearly_normal(model: EmbeddedModel, k: int, field: GroundField | None = None) -> VerificationReport:
    """A linearly normal model with e ≥ g + k satisfies N_k."""
    if k < 0:
        raise BettilabValueError("k must be non-negative")
    start = time.perf_counter()
    meta = model.metadata
    hypotheses = [
        _computed("V = H⁰(X, O_X(1))", meta.linearly_normal, f"t = {meta.t}"),
        _computed(f"e ≥ g + {k}", meta.e >= meta.g + k, f"e = {meta.e}, g = {meta.g}"),
        _catalog("reg(O_X) ≤ 2", meta.o_two_regular),
        *_standard_hypotheses(model),
    ]
    if not all(item.value for item in hypotheses):
        return _report(Theorem.thm12ln, model, start, hypotheses, [])

    table = betti_table(model, field=field, p_max=max(k, default_p_max(model)), q_max=Q_MAX)
    holds, failing = nk_property(table, k)
    conclusions = [
        _computed(f"N_{k} holds", holds, "all cells vanish" if holds else f"k_{failing} ≠ 0"),
    ]
    notes = [f"largest k with N_k within the table: {nk_threshold(table)}"]
    return _report(Theorem.thm12ln, model, start, hypotheses, conclusions, notes=notes)


def verify_thm12_projected(model: EmbeddedModel, field: GroundField | None = None) -> VerificationReport:
    """Vanishing and nonvanishing pattern of a projected model; the undetermined ranges are reported, not judged.

    Raises:
        UnsupportedModelError: If the model has no gonality metadata.
    """
    start = time.perf_counter()
    meta = model.metadata
    if meta.gonality is None:
        raise UnsupportedModelError(f"{model.descriptor} has no gonality metadata")
    e, g, t, gon = meta.e, meta.g, meta.t, meta.gonality
    hypotheses = [
        _computed("V ⊊ H⁰(X, O_X(1)) of codimension t ≥ 1", t >= 1, f"t = {t}"),
        _computed("e ≥ g + 1", e >= g + 1, f"e = {e}, g = {g}"),
        _computed("O_X(1) sufficiently positive", meta.positive, f"d = {meta.d}, 2g + 3 = {2 * g + 3}"),
        _catalog("reg(O_X) = 2", meta.o_two_regular),
        *_standard_hypotheses(model),
    ]
    if not all(item.value for item in hypotheses):
        return _report(Theorem.thm12proj, model, start, hypotheses, [])

    table = betti_table(model, field=field, p_max=model.ambient + 1, q_max=Q_MAX)
    outside = {(p, q): value for p, q, value in table.cells() if value and not (0 <= p <= e and q <= 2)}
    row0 = _cells(table, ((p, 0) for p in range(table.p_max + 1)))
    row1_nonzero = _cells(table, ((p, 1) for p in range(0, e + 2 - gon)))
    row1_zero = _cells(table, ((p, 1) for p in range(e + 2 - gon + t, e + 1)))
    row2_zero = _cells(table, ((p, 2) for p in range(0, e - g)))
    row2_nonzero = _cells(table, ((p, 2) for p in range(e - g + t, e + 1)))

    conclusions = [
        _computed("K_{p,q} = 0 unless 0 ≤ p ≤ e and q ≤ 2", not outside, f"nonzero outside: {sorted(outside)}"),
        _computed(
            "K_{p,0} ≠ 0 if and only if p = 0",
            all(bool(value) == (p == 0) for (p, _), value in row0.items()),
            f"row 0: {list(row0.values())}",
        ),
        _computed(
            f"K_{{p,1}} ≠ 0 for 0 ≤ p ≤ {e + 1 - gon}",
            all(row1_nonzero.values()),
            f"{sorted(row1_nonzero.items())}",
        ),
        _computed(
            f"K_{{p,1}} = 0 for {e + 2 - gon + t} ≤ p ≤ {e}",
            not any(row1_zero.values()),
            f"{sorted(row1_zero.items())}",
        ),
        _computed(
            f"K_{{p,2}} = 0 for 0 ≤ p ≤ {e - 1 - g}", not any(row2_zero.values()), f"{sorted(row2_zero.items())}"
        ),
        _computed(
            f"K_{{p,2}} ≠ 0 for {e - g + t} ≤ p ≤ {e}",
            all(row2_nonzero.values()),
            f"{sorted(row2_nonzero.items())}",
        ),
    ]
    undetermined = _cells(table, undetermined_cells(model))
    notes = [f"undetermined cells, computed directly: {sorted(undetermined.items())}"] if undetermined else []
    return _report(Theorem.thm12proj, model, start, hypotheses, conclusions, notes=notes)


def verify_thm13_bound(model: EmbeddedModel, field: GroundField | None = None) -> VerificationReport:
    """reg(X) ≤ d - e + 1 - g for models that are not linearly normal, with e ≥ g + 1.

    On a linearly normal model the hypotheses fail; the report then notes the strict inequality reg(X) > d - e + 1 - g.
    """
    start = time.perf_counter()
    meta = model.metadata
    d, e, g = meta.d, meta.e, meta.g
    bound = d - e + 1 - g
    hypotheses = [
        _computed("X is not linearly normal", not meta.linearly_normal, f"t = {meta.t}"),
        _computed("e ≥ g + 1", e >= g + 1, f"e = {e}, g = {g}"),
        _catalog("reg(O_X) = 2", meta.o_two_regular),
        *_standard_hypotheses(model),
    ]
    try:
        reg = regularity_from_table(_coordinate_table(model, field)) + 1
    except InconclusiveError as e:
        return _report(Theorem.thm13, model, start, hypotheses, [], notes=[str(e)], inconclusive=True)

    if not all(item.value for item in hypotheses):
        notes = [f"reg(X) = {reg}, d - e + 1 - g = {bound}"]
        if meta.linearly_normal:
            notes.append(f"linearly normal: reg(X) > d - e + 1 - g is {reg > bound}")
        return _report(Theorem.thm13, model, start, hypotheses, [], notes=notes)

    k01 = betti_table(model, field=field, p_max=1, q_max=1)[0, 1]
    m = d - e - g
    defect = m_normality_defect(model, m, field=field)
    conclusions = [
        _computed(f"reg(X) ≤ {bound}", reg <= bound, f"reg(X) = {reg}"),
        _computed(f"k_{{0,1}} = d - e - g - 1 = {d - e - g - 1}", k01 == d - e - g - 1, f"k_{{0,1}} = {k01}"),
        _computed(f"X is {m}-normal", defect == 0, f"h¹(I_X({m})) = {defect}"),
    ]
    return _report(Theorem.thm13, model, start, hypotheses, conclusions)


def verify_prop32_prop33(
    model: EmbeddedModel,
    field: GroundField | None = None,
    seed: int = 0,
    bound: int = DEFAULT_BOUND,
    max_reseeds: int = DEFAULT_RESEEDS,
) -> VerificationReport:
    """The sectional genus equals the genus of a general curve section and the Betti tables of X and C agree."""
    start = time.perf_counter()
    meta = model.metadata
    hypotheses = [
        _computed("n ≥ 2", meta.n >= 2, f"n = {meta.n}"),
        _catalog("H¹(X, O_X) = 0", meta.h1_vanishes),
        _catalog("X is smooth", meta.smooth),
    ]
    if not all(item.value for item in hypotheses):
        return _report(Theorem.prop33, model, start, hypotheses, [])

    section = curve_section(model, seed=seed, bound=bound, max_reseeds=max_reseeds)
    genus = section.hilbert_polynomial.genus
    p_max = default_p_max(model)
    table = betti_table(model, field=field, p_max=p_max, q_max=Q_MAX)
    section_table = betti_table(section, field=field, p_max=p_max, q_max=Q_MAX)
    differences = table.differences(section_table)
    conclusions = [
        _computed("sectional genus equals the catalog genus", genus == meta.g, f"g(C) = {genus}, g = {meta.g}"),
        _computed(
            "K_{p,q}(X, H) = K_{p,q}(C, H|_C) for all cells",
            not differences,
            f"differing cells: {differences}" if differences else f"{len(table.cells())} cells equal",
        ),
    ]
    notes = [f"curve section seed {section.seed}"]
    return _report(Theorem.prop33, model, start, hypotheses, conclusions, notes=notes)


def verify_green_duality(model: EmbeddedModel, field: GroundField | None = None) -> VerificationReport:
    """k_{p,2}(C, V) = k_{c-p,0}(C, K_C, V) with c = dim V - 2, for 0 ≤ p ≤ c."""
    start = time.perf_counter()
    meta = model.metadata
    hypotheses = [
        _computed("X is a curve", meta.n == 1, f"n = {meta.n}"),
        _computed("canonical basis available", model.root_model.curve is not None),
        _computed("g ≥ 1", meta.g >= 1, f"g = {meta.g}"),
        _computed("O_X(1) sufficiently positive", meta.positive, f"d = {meta.d}, 2g + 3 = {2 * meta.g + 3}"),
    ]
    if not all(item.value for item in hypotheses):
        return _report(Theorem.duality, model, start, hypotheses, [])

    cells = green_duality_check(model, field=field)
    c = len(cells) - 1
    conclusions = [
        _computed(f"k_{{{cell.p},2}} = k_{{{c - cell.p},0}}(K)", cell.agrees, f"{cell.left} vs {cell.right}")
        for cell in cells
    ]
    literal = [cell.p for cell in cells if cell.literal is not None and cell.literal != cell.left]
    notes = [f"with the index e + 1 - p instead of c - p the cells differ at p in {literal}"] if literal else []
    return _report(Theorem.duality, model, start, hypotheses, conclusions, notes=notes)


def verify_field_consistency(model: EmbeddedModel, field: GroundField | None = None) -> VerificationReport:
    """The F_p tables of the section module and of the coordinate ring agree with the tables over Q."""
    start = time.perf_counter()
    field = field or GroundField.prime_field()
    hypotheses = [_computed("the fast path uses a prime field", not field.is_rational, f"field = {field}")]
    if field.is_rational:
        return _report(Theorem.fields, model, start, hypotheses, [])

    conclusions = []
    for kind in ModuleKind:
        _, differences = betti_table_checked(model, field, kind=kind, q_max=Q_MAX)
        conclusions.append(
            _computed(
                f"{kind.value} tables over {field} and Q agree",
                not differences,
                f"differing cells: {differences}" if differences else "",
            )
        )
    return _report(Theorem.fields, model, start, hypotheses, conclusions)


VERIFIERS: dict[Theorem, Callable[..., VerificationReport]] = {
    Theorem.minimal_degree: verify_minimal_degree,
    Theorem.thm12ln: verify_thm12_linearly_normal,
    Theorem.thm12proj: verify_thm12_projected,
    Theorem.thm13: verify_thm13_bound,
    Theorem.prop33: verify_prop32_prop33,
    Theorem.duality: verify_green_duality,
    Theorem.fields: verify_field_consistency,
}


def verify(
    model: EmbeddedModel, theorem: Theorem, field: GroundField | None = None, k: int | None = None, seed: int = 0
) -> VerificationReport:
    """Run one check.

    Raises:
        BettilabValueError: If `thm12ln` is requested without k.
    """
    match theorem:
        case Theorem.thm12ln:
            if k is None:
                raise BettilabValueError("the N_k check needs k")
            return verify_thm12_linearly_normal(model, k, field=field)
        case Theorem.prop33:
            return verify_prop32_prop33(model, field=field, seed=seed)
        case _:
            return VERIFIERS[theorem](model, field=field)


def run_suite(
    jobs: Sequence[tuple[EmbeddedModel, Theorem]],
    field: GroundField | None = None,
    k: int | None = None,
    seed: int = 0,
) -> list[VerificationReport]:
    """Run a batch of (model, theorem) checks in order."""
    return [verify(model, theorem, field=field, k=k, seed=seed) for model, theorem in jobs]


def reports_to_csv(reports: Iterable[VerificationReport]) -> str:
    """Aggregate CSV with one line per report."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["theorem", "model", "seed_chain", "status", "hypotheses", "conclusions", "failed", "timing"])
    for report in reports:
        writer.writerow(
            [
                report.theorem.value,
                report.model,
                " ".join(map(str, report.seed_chain)),
                report.status.value,
                sum(item.value for item in report.hypotheses),
                sum(item.value for item in report.conclusions),
                "; ".join(item.description for item in report.failed_items),
                report.timing,
            ]
        )
    return buffer.getvalue()
