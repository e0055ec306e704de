"""Isomorphic projections from points and the behaviour of Koszul cohomology under them.

A point P = [v] of P(V) is given by integer coordinates v; projecting from P replaces V by the hyperplane
W = ker(ev_v) of linear forms vanishing at P, with basis w_i = v_j·x_i - v_i·x_j (i ≠ j) for the last index j with
v_j ≠ 0. Every step is guarded: the projected model must have the Hilbert polynomial of the model it comes from.
"""

from collections.abc import Callable, Iterator, Sequence
from functools import partial
from math import comb

from sympy import QQ, Matrix

from bettilab.algebra.field import FieldScalar, GroundField
from bettilab.algebra.groebner import buchberger, eliminate, substitute_linear
from bettilab.algebra.hilbert import hilbert_polynomial
from bettilab.algebra.polynomial import Polynomial, polynomial_ring, variable_names
from bettilab.algebra.sparse import SparseMatrix, compose, hstack, linear_combination, rank, solve_in_span
from bettilab.cli.utils import Console
from bettilab.enums import CellStatus, Rule, Twist
from bettilab.exceptions import BettilabValueError, GuardError, IntegrityError, PredictionError
from bettilab.koszul import KoszulComplex, contraction_terms, make_module, table_from_complex, wedge_basis, wedge_index
from bettilab.models.betti import BettiTable
from bettilab.models.model import EmbeddedModel, ModelMetadata
from bettilab.models.projection import CellPrediction, LesViolation, ProjectionRecord, ProjectionTrace
from bettilab.utils import derive_seed, random_integers

DEFAULT_BOUND = 50
DEFAULT_RESEEDS = 5
GENERIC_SAMPLES = 5
AGREEMENT_CENTERS = 3

Known = Callable[[int, int], CellStatus | None]
"""Lookup of the already known status of a cell of the projected model."""


# -----------------
# one-point steps
# -----------------


def subspace_basis(center: Sequence[int]) -> list[list[int]]:
    """Basis w_i = v_j·e_i - v_i·e_j (i ≠ j) of W = ker(ev_v), as coordinate vectors in V.

    Raises:
        BettilabValueError: If the center is the zero vector.
    """
    nonzero = [i for i, c in enumerate(center) if c]
    if not nonzero:
        raise BettilabValueError("the center of a projection must be a nonzero vector")
    j = nonzero[-1]
    basis = []
    for i in range(len(center)):
        if i == j:
            continue
        vector = [0] * len(center)
        vector[i] = center[j]
        vector[j] -= center[i]
        basis.append(vector)
    return basis


def project_ideal(model: EmbeddedModel, center: Sequence[int]) -> list[Polynomial]:
    """Ideal of the projection of the model from [center], in the variables x0, ..., x_{r-1} of P(W)."""
    r = model.ambient
    j = max(i for i, c in enumerate(center) if c)
    names = (*variable_names("w", r), "u")
    work = polynomial_ring(names)
    w, u = work.gens[:-1], work.gens[-1]

    mapping: dict[str, Polynomial] = {}
    for i, name in enumerate(model.variables):
        if i == j:
            mapping[name] = u
        else:
            k = i if i < j else i - 1
            mapping[name] = w[k] * QQ(1, center[j]) + u * QQ(center[i], center[j])
    substituted = substitute_linear(model.ideal, mapping, work)
    eliminated = eliminate(substituted, keep=names[:-1]) if substituted else []

    target = polynomial_ring(variable_names("x", r))
    return [target.from_terms(dict(f.terms())) for f in eliminated]


def one_point_projection(
    model: EmbeddedModel,
    seed: int,
    step: int = 0,
    bound: int = DEFAULT_BOUND,
    max_reseeds: int = DEFAULT_RESEEDS,
) -> EmbeddedModel:
    """Project the model from a seeded random point of P(V).

    Args:
        model: The model to project (linearly normal or already projected).
        seed: Seed of the step; reseeds derive from it.
        step: Index of the step in the projection chain.
        bound: Coordinates of the center are drawn from [-bound, bound].
        max_reseeds: Number of further centers tried when the guard fails.

    Returns:
        The projected model, with the step appended to its chain.

    Raises:
        GuardError: If no center gives a projection with the same Hilbert polynomial.
    """
    if model.ambient <= model.metadata.n + 1:
        raise BettilabValueError(f"{model.descriptor} cannot be projected isomorphically from P^{model.ambient}")

    r = model.ambient
    target = polynomial_ring(variable_names("x", r))
    tried = []
    for attempt in range(max_reseeds + 1):
        attempt_seed = seed if attempt == 0 else derive_seed(seed, attempt)
        tried.append(attempt_seed)
        center = random_integers(attempt_seed, r + 1, bound)
        if not any(center):
            continue

        G = buchberger(project_ideal(model, center), target)
        projected_hp = hilbert_polynomial(G)
        if projected_hp == model.hilbert_polynomial:
            record = ProjectionRecord(step=step, seed=attempt_seed, center=center, attempts=attempt + 1)
            Console().log(f"projection step {step}: center {center} accepted (seed {attempt_seed})")
            return _projected_model(model, G.lines(), center, record)
        Console().log(f"[yellow]projection step {step}: Hilbert polynomial {projected_hp} for seed {attempt_seed}")
    raise GuardError(f"projection step {step} of {model.descriptor}", tried)


def _projected_model(
    model: EmbeddedModel, generators: list[str], center: list[int], record: ProjectionRecord
) -> EmbeddedModel:
    root = model.root_model
    forms = model.subspace
    subspace = []
    for vector in subspace_basis(center):
        form = sum((c * f for c, f in zip(vector, forms, strict=True) if c), root.ring.zero)
        subspace.append(root.ring.format(form))

    meta = model.metadata
    metadata = ModelMetadata(**(meta.model_dump() | {"e": meta.e - 1, "t": meta.t + 1, "linearly_normal": False}))
    return EmbeddedModel(
        name=root.name,
        params=root.params,
        ambient=model.ambient - 1,
        variables=list(variable_names("x", model.ambient)),
        generators=generators,
        metadata=metadata,
        parent_subspace=subspace,
        root=root,
        chain=[*model.chain, record],
    )


def projection_steps(
    model: EmbeddedModel, t: int, seed: int, bound: int = DEFAULT_BOUND, max_reseeds: int = DEFAULT_RESEEDS
) -> Iterator[EmbeddedModel]:
    """Yield the models after each of t one-point projections; step i uses the seed derived from (seed, i)."""
    if t < 1:
        raise BettilabValueError("the codimension t of the projection must be at least 1")
    current = model
    for _ in range(t):
        step = len(current.chain)
        current = one_point_projection(
            current, derive_seed(seed, step), step=step, bound=bound, max_reseeds=max_reseeds
        )
        yield current


def random_subspace(
    model: EmbeddedModel, t: int, seed: int, bound: int = DEFAULT_BOUND, max_reseeds: int = DEFAULT_RESEEDS
) -> EmbeddedModel:
    """Project from t general points; the result has V of codimension t more in H⁰(O_X(1)).

    Raises:
        BettilabValueError: If t < 1.
        GuardError: If some step fails its guard.
    """
    result = model
    for result in projection_steps(model, t, seed, bound=bound, max_reseeds=max_reseeds):
        pass
    return result


# ---------------------------
# long exact sequence checks
# ---------------------------


def les_consistency(parent: BettiTable, child: BettiTable) -> list[LesViolation]:
    """Check the rank inequalities of K_{p,q}(W) → K_{p,q}(V) → K_{p-1,q}(W) → K_{p-1,q+1}(W) on both tables.

    Cells outside the child table are skipped; cells with a negative index are zero.

    Raises:
        BettilabValueError: If the tables differ in field or twist.
    """
    if parent.field != child.field or parent.twist != child.twist:
        raise BettilabValueError("tables over different fields or with different twists cannot be compared")

    def w(p: int, q: int) -> int | None:
        if p < 0 or q < 0:
            return 0
        return child[p, q] if (p, q) in child else None

    violations = []
    for q in range(min(parent.q_max, child.q_max) + 1):
        for p in range(parent.p_max + 1):
            v = parent[p, q]
            w_pq, w_left, w_up, w_down = w(p, q), w(p - 1, q), w(p - 1, q + 1), w(p, q - 1)
            if w_pq is not None and w_left is not None and v > w_pq + w_left:
                violations.append(LesViolation(cell=(p, q), inequality=f"{v} ≤ {w_pq} + {w_left}"))
            if p >= 1 and w_left is not None and w_up is not None and w_left > v + w_up:
                violations.append(LesViolation(cell=(p, q), inequality=f"{w_left} ≤ {v} + {w_up}"))
            if w_pq is not None and w_down is not None and w_pq > w_down + v:
                violations.append(LesViolation(cell=(p, q), inequality=f"{w_pq} ≤ {w_down} + {v}"))
    return violations


# -------------------
# evaluation matrices
# -------------------


class EvMatrix:
    """The map H⁰(ev): K_{p,q} → V ⊗ K_{p-1,q} as a k_{p,q} × k_{p-1,q} matrix of linear forms.

    `components[i]` holds the coefficients of x_i; evaluating at v gives the matrix of ev_v in the bases of
    representatives (rows: classes of K_{p,q}, columns: classes of K_{p-1,q}).
    """

    def __init__(self, p: int, q: int, twist: Twist, components: list[SparseMatrix], field: GroundField) -> None:
        self.p = p
        self.q = q
        self.twist = twist
        self.components = components
        self.field = field

    def __repr__(self) -> str:
        return f"EvMatrix(p={self.p}, q={self.q}, {self.shape[0]}x{self.shape[1]} over {self.field})"

    @property
    def shape(self) -> tuple[int, int]:
        return self.components[0].shape

    def evaluate(self, point: Sequence[int | FieldScalar]) -> SparseMatrix:
        if len(point) != len(self.components):
            raise BettilabValueError(f"a point of P(V) needs {len(self.components)} coordinates")
        return linear_combination([self.field.convert(c) for c in point], self.components)

    def rank_at(self, point: Sequence[int | FieldScalar]) -> int:
        return rank(self.evaluate(point))

    def entry(self, a: int, b: int) -> list[FieldScalar]:
        """Coefficients of the linear form in row a and column b."""
        return [m.row_dict().get(a, {}).get(b, self.field.zero()) for m in self.components]

    def is_injective(self) -> bool:
        """Whether H⁰(ev): K_{p,q} → V ⊗ K_{p-1,q} is injective (stacked components of full row rank)."""
        return rank(hstack(*self.components)) == self.shape[0]


def contract(complex_: KoszulComplex, p: int, q: int, i: int, vectors: SparseMatrix) -> SparseMatrix:
    """Contraction by the dual basis vector e_i* on columns of Λ^p V ⊗ M_q, landing in Λ^{p-1} V ⊗ M_q."""
    n, dim_q, field = complex_.dim_space, complex_.module.dimension(q), complex_.field
    basis, target = wedge_basis(n, p), wedge_index(n, p - 1)
    rows: dict[int, dict[int, FieldScalar]] = {}
    for col, column in enumerate(vectors.columns()):
        for index, value in column.items():
            k, b = divmod(index, dim_q)
            for sign, dropped, rest in contraction_terms(basis[k]):
                if dropped != i:
                    continue
                row = rows.setdefault(target[rest] * dim_q + b, {})
                row[col] = row.get(col, field.zero()) + (value if sign > 0 else -value)
    return SparseMatrix.from_rows(rows, (comb(n, p - 1) * dim_q, vectors.cols), field)


def build_ev_matrix(complex_: KoszulComplex, p: int, q: int) -> EvMatrix:
    """H⁰(ev) for the cell (p, q), from the representatives of K_{p,q} and K_{p-1,q}."""
    if p < 1:
        raise BettilabValueError("evaluation matrices need p ≥ 1")
    field, n = complex_.field, complex_.dim_space
    source = complex_.cell(p, q, representatives=True)
    complex_.cell(p - 1, q, representatives=True)
    k_target = complex_.dimension(p - 1, q)
    assert source.representatives is not None
    cocycles = SparseMatrix.from_columns(source.representatives, complex_.chain_dimension(p, q), field)

    components = []
    for i in range(n):
        contracted = contract(complex_, p, q, i, cocycles)
        try:
            coordinates = complex_.class_coordinates(p - 1, q, contracted)
        except BettilabValueError:
            raise IntegrityError(f"contraction of a cocycle of ({p}, {q}) is not a cocycle") from None
        components.append(coordinates.transpose())
    if not components:
        components = [SparseMatrix.zeros((source.dimension, k_target), field)]
    return EvMatrix(p=p, q=q, twist=complex_.module.twist, components=components, field=field)


def ev_generic_rank(ev: EvMatrix, seed: int, samples: int = GENERIC_SAMPLES, bound: int = DEFAULT_BOUND) -> int:
    """Generic rank of H⁰(ev): the largest rank at `samples` seeded random points."""
    n = len(ev.components)
    return max(ev.rank_at(random_integers(derive_seed(seed, k), n, bound)) for k in range(samples))


def is_general_center(ev: EvMatrix, center: Sequence[int], seed: int) -> bool:
    """A center is general for the cell when ev_v has the generic rank."""
    return ev.rank_at(center) == ev_generic_rank(ev, seed)


def _minor(rows: Sequence[Sequence[int]], columns: Sequence[int]) -> int:
    if not columns:
        return 1
    return int(Matrix([[row[c] for c in columns] for row in rows]).det())


def wedge_inclusion(w: Sequence[Sequence[int]], dim_space: int, p: int, field: GroundField) -> SparseMatrix:
    """Λ^p W → Λ^p V for a basis `w` of W ⊂ V given by coordinate vectors; entries are the p-minors of `w`."""
    entries = {}
    for column, rows in enumerate(wedge_basis(len(w), p)):
        for row, columns in enumerate(wedge_basis(dim_space, p)):
            value = _minor([w[k] for k in rows], columns)
            if value:
                entries[(row, column)] = value
    return SparseMatrix.from_entries(entries, (comb(dim_space, p), comb(len(w), p)), field)


def _tensor_identity(A: SparseMatrix, dim_q: int) -> SparseMatrix:
    """A ⊗ id on chains whose column of e_I ⊗ f is `index(I)·dim_q + index(f)`."""
    entries = {(i * dim_q + b, j * dim_q + b): v for (i, j), v in A.entries().items() for b in range(dim_q)}
    return SparseMatrix.from_entries(entries, (A.rows * dim_q, A.cols * dim_q), A.field)


def contraction_factors(dim_space: int, p: int, center: Sequence[int], field: GroundField | None = None) -> bool:
    """Check that contraction by v on Λ^p V factors through Λ^{p-1} W ⊂ Λ^{p-1} V, as matrices.

    The inclusion is given by the (p-1)-minors of the basis of W; the factorization ι_v is solved for and the
    composition compared with the contraction exactly.
    """
    field = field or GroundField.rationals()
    if len(center) != dim_space:
        raise BettilabValueError(f"the center needs {dim_space} coordinates")
    if p < 1 or p > dim_space:
        return True
    w = subspace_basis(center)
    if any(sum(a * b for a, b in zip(vector, center, strict=True)) for vector in w):
        return False

    source, target = wedge_basis(dim_space, p), wedge_index(dim_space, p - 1)
    contraction: dict[tuple[int, int], int] = {}
    for k, wedge in enumerate(source):
        for sign, dropped, rest in contraction_terms(wedge):
            if center[dropped]:
                key = (target[rest], k)
                contraction[key] = contraction.get(key, 0) + sign * center[dropped]
    C = SparseMatrix.from_entries(contraction, (comb(dim_space, p - 1), len(source)), field)
    J = wedge_inclusion(w, dim_space, p - 1, field)

    try:
        factor = solve_in_span(J, C)
    except BettilabValueError:
        return False
    return compose(J, factor) == C


def _check_projected(parent: KoszulComplex, child: KoszulComplex, w: Sequence[Sequence[int]]) -> None:
    pm, cm = parent.module, child.module
    if parent.field != child.field or pm.kind != cm.kind or pm.twist != cm.twist or pm.source != cm.source:
        raise BettilabValueError("the complexes do not share field, module kind, twist and pieces")
    expected = [
        [sum(c * row[k] for c, row in zip(vector, pm.space, strict=True)) for k in range(pm.nsource)] for vector in w
    ]
    if cm.space != expected:
        raise BettilabValueError("the space of the child complex is not the kernel of evaluation at the center")


def diagram_commutes(parent: KoszulComplex, child: KoszulComplex, p: int, q: int, center: Sequence[int]) -> bool:
    """Check ev_v = incl ∘ pr_v on K_{p,q}(V) as matrices, for a model and its projection from [v].

    pr_v contracts the representatives of K_{p,q}(V) by v and reads the results as classes of K_{p-1,q}(W); incl
    maps the representatives of K_{p-1,q}(W) into Λ^{p-1} V ⊗ M_q and takes their classes in K_{p-1,q}(V). The
    composition is compared exactly with the evaluation matrix of the parent at v.

    Args:
        parent: Complex of the model over V.
        child: Complex of the projected model over W, on the same pieces.
        p: Homological index of the source cell.
        q: Weight of the cell.
        center: The center v, in the coordinates of V.

    Returns:
        False when a contraction leaves Λ^{p-1} W ⊗ M_q or the two matrices differ.

    Raises:
        BettilabValueError: If the child complex does not belong to the projection from `center`.
    """
    field, n = parent.field, parent.dim_space
    if len(center) != n:
        raise BettilabValueError(f"the center needs {n} coordinates")
    w = subspace_basis(center)
    _check_projected(parent, child, w)
    if p < 1 or p > n or parent.dimension(p, q) == 0:
        return True

    ev_v = build_ev_matrix(parent, p, q).evaluate(center).transpose()
    source = parent.cell(p, q, representatives=True)
    assert source.representatives is not None
    cocycles = SparseMatrix.from_columns(source.representatives, parent.chain_dimension(p, q), field)
    contracted = linear_combination(
        [field.convert(c) for c in center], [contract(parent, p, q, i, cocycles) for i in range(n)]
    )
    inclusion = _tensor_identity(wedge_inclusion(w, n, p - 1, field), parent.module.dimension(q))

    target = child.cell(p - 1, q, representatives=True)
    assert target.representatives is not None
    child_reps = SparseMatrix.from_columns(target.representatives, child.chain_dimension(p - 1, q), field)
    try:
        projected = child.class_coordinates(p - 1, q, solve_in_span(inclusion, contracted))
        included = parent.class_coordinates(p - 1, q, compose(inclusion, child_reps))
    except BettilabValueError:
        return False
    return compose(included, projected) == ev_v


# -----------
# predictions
# -----------


def _all_zero(known: Known, i_from: int, j_to: int, dim_space: int) -> bool:
    """Every cell (i, j) with i ≥ i_from and 0 ≤ j ≤ j_to is known to vanish."""
    return all(
        known(i, j) == CellStatus.zero for j in range(0, j_to + 1) for i in range(max(i_from, 0), dim_space + 1)
    )


def corollary_predict(
    parent: BettiTable,
    rule: Rule,
    p: int,
    q: int,
    known: Known | None = None,
    general: bool = True,
) -> CellStatus:
    """Predicted status of K_{p,q}(X, B, W) for a one-point projection, from the table over V.

    Args:
        parent: Table of the model before the projection (the twisted row for `Cor3.9`).
        rule: `Cor3.5` (vanishing of lower rows required), `Cor3.7` (row q = 1) or `Cor3.9` (row q = 0).
        p: Homological index of the cell of the projected model.
        q: Weight of the cell.
        known: Status of cells of the projected model already known; unknown cells block `Cor3.5`.
        general: Whether the center passed the generality check (needed for vanishing by `Cor3.7`/`Cor3.9`).

    Returns:
        zero, nonzero or no-prediction; never a guess outside the hypotheses.
    """
    known = known or (lambda i, j: None)
    dim_w = parent.dim_space - 1

    def v(i: int, j: int) -> int | None:
        if i < 0 or j < 0:
            return 0
        return parent[i, j] if (i, j) in parent else None

    match rule:
        case Rule.cor35:
            above = v(p + 1, q)
            if above and _all_zero(known, p, q - 1, dim_w):
                return CellStatus.nonzero
            if v(p, q) == 0 and _all_zero(known, p - 1, q - 1, dim_w):
                return CellStatus.zero
            return CellStatus.no_prediction

        case Rule.cor37 | Rule.cor39:
            row = 1 if rule == Rule.cor37 else 0
            if q != row or p < (2 if rule == Rule.cor37 else 1):
                return CellStatus.no_prediction
            if rule == Rule.cor37 and any(v(i, 0) for i in range(1, parent.p_max + 1)):
                return CellStatus.no_prediction
            before, here = v(p - 1, q), v(p, q)
            if before is None or here is None:
                return CellStatus.no_prediction
            if before < here:
                return CellStatus.nonzero
            if here > 0 and general:
                return CellStatus.zero
            return CellStatus.no_prediction

        case _:
            raise BettilabValueError(f"{rule.value} is not a corollary rule")


def undetermined_cells(model: EmbeddedModel) -> list[tuple[int, int]]:
    """Cells left open by the shape theorem for projected models.

    Row 1: e + 2 - gon ≤ p ≤ e + 1 - gon + t; row 2: e - g ≤ p ≤ e - g + t - 1.
    """
    meta = model.metadata
    if meta.linearly_normal:
        return []
    cells = []
    if meta.gonality is not None:
        cells += [(p, 1) for p in range(meta.e + 2 - meta.gonality, meta.e + 2 - meta.gonality + meta.t) if p >= 0]
    cells += [(p, 2) for p in range(meta.e - meta.g, meta.e - meta.g + meta.t) if p >= 0]
    return cells


class _StepPredictor:
    """Predictions for the cells of one projected model from the table of the model it was projected from.

    The first rule deciding a cell wins; a later rule deciding it the other way is a conflict.
    """

    def __init__(
        self,
        parent: BettiTable,
        parent_twisted: BettiTable | None,
        child: EmbeddedModel,
        general: Callable[[int, int, Twist], bool],
        strict: bool = True,
    ) -> None:
        self.parent = parent
        self.parent_twisted = parent_twisted
        self.child = child
        self.general = general
        self.strict = strict
        self.dim_w = parent.dim_space - 1
        self.decided: dict[tuple[int, int, Twist], tuple[CellStatus, Rule | None]] = {}
        self.conflicts: list[str] = []

    def known(self, twist: Twist) -> Known:
        def lookup(i: int, j: int) -> CellStatus | None:
            if i > self.dim_w:
                return CellStatus.zero
            status = self.decided.get((i, j, twist), (None, None))[0]
            return status if status in (CellStatus.zero, CellStatus.nonzero) else None

        return lookup

    def decide(self, cell: tuple[int, int], twist: Twist, candidates: Sequence[tuple[CellStatus, Rule]]) -> None:
        chosen: tuple[CellStatus, Rule | None] = (CellStatus.no_prediction, None)
        for status, rule in candidates:
            if status not in (CellStatus.zero, CellStatus.nonzero):
                continue
            if chosen[1] is None:
                chosen = (status, rule)
            elif chosen[0] != status:
                trace = [f"{r.value}: {s.value}" for s, r in candidates if s != CellStatus.no_prediction]
                message = f"rules disagree on cell {cell} ({twist.value}): {', '.join(trace)}"
                if self.strict:
                    raise PredictionError(message, trace)
                self.conflicts.append(message)
                break
        self.decided[(cell[0], cell[1], twist)] = chosen

    def statuses(self) -> dict[tuple[int, int, Twist], CellStatus]:
        return {key: status for key, (status, _) in self.decided.items()}

    def _general(self, table: BettiTable, p: int, q: int, twist: Twist) -> bool:
        """Generality is only checked where a vanishing prediction depends on it."""
        if (p, q) not in table or p < 1:
            return True
        if not table[p - 1, q] >= table[p, q] > 0:
            return True
        return self.general(p, q, twist)

    def run(self, q_max: int) -> None:
        dim_w, meta = self.dim_w, self.child.metadata

        # row 0 of the untwisted module
        for p in range(dim_w + 1):
            self.decide((p, 0), Twist.zero, [(CellStatus.nonzero if p == 0 else CellStatus.zero, Rule.shape)])

        # the twisted row, through which row 2 is determined
        if self.parent_twisted is not None:
            known = self.known(Twist.canonical)
            for p in range(dim_w + 1):
                candidates = [(CellStatus.nonzero, Rule.shape)] if p == 0 else []
                candidates.append((corollary_predict(self.parent_twisted, Rule.cor35, p, 0, known), Rule.cor35))
                general = self._general(self.parent_twisted, p, 0, Twist.canonical)
                candidates.append(
                    (corollary_predict(self.parent_twisted, Rule.cor39, p, 0, known, general), Rule.cor39)
                )
                self.decide((p, 0), Twist.canonical, candidates)

        for q in range(1, q_max + 1):
            known = self.known(Twist.zero)
            for p in range(dim_w + 1):
                candidates = []
                if q == 1 and p == 0:
                    candidates.append((CellStatus.nonzero, Rule.shape))
                if q >= 3 and meta.positive:
                    candidates.append((CellStatus.zero, Rule.shape))
                candidates.append((corollary_predict(self.parent, Rule.cor35, p, q, known), Rule.cor35))
                if q == 1:
                    general = self._general(self.parent, p, 1, Twist.zero)
                    candidates.append((corollary_predict(self.parent, Rule.cor37, p, q, known, general), Rule.cor37))
                if q == 2 and self.parent_twisted is not None:
                    index = dim_w - 2 - p
                    dual = CellStatus.zero if index < 0 else self.decided[(index, 0, Twist.canonical)][0]
                    candidates.append((dual, Rule.duality))
                if q == 1 and meta.positive and meta.gonality is not None:
                    if 1 <= p <= meta.e + 1 - meta.gonality:
                        candidates.append((CellStatus.nonzero, Rule.gonality))
                self.decide((p, q), Twist.zero, candidates)


def reseed_centers(
    record: ProjectionRecord, dim_space: int, bound: int, count: int = AGREEMENT_CENTERS
) -> list[list[int]]:
    """The accepted center of a step followed by `count - 1` centers drawn from seeds derived from its seed."""
    # three labels keep these seeds apart from the (p, q) seeds of the generic ranks
    return [record.center] + [
        random_integers(derive_seed(record.seed, 0, 0, k), dim_space, bound) for k in range(1, count)
    ]


class _CenterCheck:
    """Rank stability of the evaluation matrices of a parent model at candidate centers."""

    def __init__(self, complex_: KoszulComplex, twisted: KoszulComplex | None, seed: int) -> None:
        self.complexes = {Twist.zero: complex_, Twist.canonical: twisted}
        self.seed = seed
        self._ev: dict[tuple[int, int, Twist], tuple[EvMatrix, int]] = {}

    def general(self, center: Sequence[int], p: int, q: int, twist: Twist) -> bool:
        source = self.complexes[twist]
        if source is None or p < 1 or source.dimension(p, q) == 0:
            return True
        if (p, q, twist) not in self._ev:
            ev = build_ev_matrix(source, p, q)
            self._ev[(p, q, twist)] = ev, ev_generic_rank(ev, derive_seed(self.seed, p, q))
        ev, generic = self._ev[(p, q, twist)]
        return ev.rank_at(center) == generic

    def general_at_all(self, centers: Sequence[Sequence[int]], p: int, q: int, twist: Twist) -> bool:
        return all(self.general(center, p, q, twist) for center in centers)


def _reject(rejected: list[int], seed: int) -> None:
    if seed not in rejected:
        rejected.append(seed)


def _accepted_center_is_general(
    check: _CenterCheck, record: ProjectionRecord, rejected: list[int], p: int, q: int, twist: Twist
) -> bool:
    if check.general(record.center, p, q, twist):
        return True
    Console().log(f"[yellow]center of step {record.step} is special for cell ({p}, {q}) {twist.value}")
    _reject(rejected, record.seed)
    return False


def _describe(prediction: CellPrediction) -> str:
    rule = prediction.rule.value if prediction.rule else "-"
    computed = prediction.computed.value if prediction.computed else "-"
    return (
        f"step {prediction.step} (seed {prediction.seed}): cell {prediction.cell} {prediction.twist.value} "
        f"predicted {prediction.predicted.value} by {rule}, computed {computed}"
    )


def predict_and_check(
    model: EmbeddedModel,
    t: int,
    seed: int,
    field: GroundField | None = None,
    bound: int = DEFAULT_BOUND,
    max_reseeds: int = DEFAULT_RESEEDS,
    strict: bool = True,
) -> tuple[EmbeddedModel, ProjectionTrace]:
    """Predict the table of t successive one-point projections and check every prediction by direct computation.

    Each step uses the directly computed table of the previous model. Row 1 is decided by the nonvanishing and
    vanishing corollaries, row 2 by duality with the canonically twisted row, which is itself predicted with the
    twisted corollaries. Vanishing by the ev-injectivity corollaries requires the center to be general for the
    evaluation matrix of the cell; centers failing this are recorded and yield no prediction. The predictions of a
    step are repeated at two further seeded centers; when the statuses differ, the seed of the step is recorded and
    only the vanishing that holds at all three centers is predicted.

    Args:
        model: The model to project.
        t: Number of one-point projections.
        seed: Seed of the projection chain.
        field: Field of the table computations.
        bound: Coordinate bound of the centers.
        max_reseeds: Reseeds per step.
        strict: Raise on the first contradiction instead of counting it.

    Returns:
        The final projected model and the trace of predictions.

    Raises:
        BettilabValueError: If t < 1.
        GuardError: If a projection step fails its guard.
        PredictionError: If `strict` and two rules disagree or a prediction contradicts the direct computation.
    """
    field = field or GroundField.rationals()
    q_max = 2
    twisted = model.root_model.curve is not None and model.metadata.n == 1

    def tables(current: EmbeddedModel) -> tuple[KoszulComplex, BettiTable, KoszulComplex | None, BettiTable | None]:
        complex_ = KoszulComplex(make_module(current, field=field, q_max=q_max))
        table = table_from_complex(complex_, current, p_max=complex_.dim_space, q_max=q_max)
        if not twisted:
            return complex_, table, None, None
        twisted_complex = KoszulComplex(make_module(current, twist=Twist.canonical, field=field, q_max=0))
        twisted_table = table_from_complex(twisted_complex, current, p_max=twisted_complex.dim_space, q_max=0)
        return complex_, table, twisted_complex, twisted_table

    current = model
    complex_, table, twisted_complex, twisted_table = tables(current)
    steps: list[ProjectionRecord] = []
    predictions: list[CellPrediction] = []
    rejected: list[int] = []
    violations: list[LesViolation] = []
    trace: list[str] = []
    last: _StepPredictor | None = None

    for child in projection_steps(model, t, seed, bound=bound, max_reseeds=max_reseeds):
        record = child.chain[-1]
        steps.append(record)

        check = _CenterCheck(complex_, twisted_complex, record.seed)
        general = partial(_accepted_center_is_general, check, record, rejected)
        predictor = _StepPredictor(table, twisted_table, child, general, strict=strict)
        predictor.run(q_max)

        centers = reseed_centers(record, complex_.dim_space, bound)
        for center in centers[1:]:
            trial = _StepPredictor(table, twisted_table, child, partial(check.general, center), strict=False)
            trial.run(q_max)
            if trial.statuses() != predictor.statuses():
                Console().log(f"[yellow]predictions of step {record.step} depend on the center, seed {record.seed}")
                _reject(rejected, record.seed)
                predictor = _StepPredictor(
                    table, twisted_table, child, partial(check.general_at_all, centers), strict=strict
                )
                predictor.run(q_max)
                break
        trace += predictor.conflicts

        child_complex, child_table, child_twisted_complex, child_twisted = tables(child)
        violations += les_consistency(table, child_table)
        if twisted_table is not None and child_twisted is not None:
            violations += les_consistency(twisted_table, child_twisted)

        for (p, q, twist), (status, rule) in sorted(predictor.decided.items()):
            computed_table = child_twisted if twist == Twist.canonical else child_table
            assert computed_table is not None
            prediction = CellPrediction(
                cell=(p, q),
                twist=twist,
                predicted=status,
                computed=computed_table.status(p, q) if (p, q) in computed_table else None,
                rule=rule,
                step=record.step,
                seed=record.seed,
            )
            predictions.append(prediction)
            if not prediction.agrees:
                trace.append(_describe(prediction))
                if strict:
                    raise PredictionError("prediction contradicts the direct computation", trace)

        current, complex_, table = child, child_complex, child_table
        twisted_complex, twisted_table = child_twisted_complex, child_twisted
        last = predictor

    assert last is not None
    undecided = sorted(
        (p, q)
        for (p, q, twist), (status, _) in last.decided.items()
        if twist == Twist.zero and q in (1, 2) and status == CellStatus.no_prediction
    )
    result = ProjectionTrace(
        steps=steps,
        predictions=predictions,
        undecided=undecided,
        rejected_seeds=rejected,
        unexpected=len(trace),
        violations=violations,
    )
    Console().log(
        f"{current.descriptor}: {sum(p.decided for p in predictions)} predictions checked, "
        f"{len(undecided)} cells undecided, {len(trace)} contradictions"
    )
    return current, result
