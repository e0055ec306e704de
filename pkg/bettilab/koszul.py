"""Koszul cohomology of graded modules over Sym V, Betti tables and regularity.

The chain groups are Λ^p V ⊗ M_q with the wedge basis of strictly increasing index tuples in lexicographic order;
the column of e_I ⊗ f is `index(I)·dim M_q + index(f)`. The differential is

    v_{i_1} ∧ ... ∧ v_{i_p} ⊗ f  ↦  Σ_j (-1)^j  v_{i_1} ∧ ... v̂_{i_j} ... ∧ v_{i_p} ⊗ v_{i_j}·f

with j the 1-based position of the dropped factor.
"""

from functools import cache
from itertools import combinations
from math import comb
from typing import NamedTuple

from bettilab.algebra.field import FieldScalar, GroundField
from bettilab.algebra.sparse import (
    SparseMatrix,
    Vector,
    compose,
    hstack,
    independent_columns,
    rank,
    rank_kernel,
    solve_in_span,
)
from bettilab.cli.utils import Console
from bettilab.enums import ModuleKind, Twist
from bettilab.exceptions import BettilabValueError, InconclusiveError, IntegrityError, RepresentativesError
from bettilab.models.betti import BettiTable
from bettilab.models.model import EmbeddedModel
from bettilab.section import SectionModule

DEFAULT_Q_MAX = 3


@cache
def wedge_basis(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing p-tuples of indices below n, in lexicographic order."""
    if p < 0:
        return ()
    return tuple(combinations(range(n), p))


@cache
def wedge_index(n: int, p: int) -> dict[tuple[int, ...], int]:
    return {wedge: k for k, wedge in enumerate(wedge_basis(n, p))}


def contraction_terms(wedge: tuple[int, ...]) -> list[tuple[int, int, tuple[int, ...]]]:
    """(sign, dropped index, remaining wedge) for every position of `wedge`, signs (-1)^j with j 1-based."""
    return [((-1) ** (j + 1), i, wedge[:j] + wedge[j + 1 :]) for j, i in enumerate(wedge)]


def koszul_differential(p: int, q: int, module: SectionModule) -> SparseMatrix:
    """Matrix of d_{p,q}: Λ^p V ⊗ M_q → Λ^{p-1} V ⊗ M_{q+1}.

    For p = 0 the target is zero and the matrix has no rows.

    Raises:
        WindowError: If piece q or q + 1 is missing.
    """
    n, field = module.dim_space, module.field
    dim_q = module.dimension(q)
    columns = comb(n, p) * dim_q if p >= 0 else 0
    if p <= 0 or p > n or dim_q == 0:
        module.require(q)
        rows = comb(n, p - 1) * module.dimension(q + 1) if 1 <= p <= n + 1 else 0
        return SparseMatrix.zeros((rows, columns), field)

    dim_next = module.dimension(q + 1)
    maps = [m.columns() for m in module.space_maps(q)]
    target = wedge_index(n, p - 1)
    entries: dict[int, dict[int, FieldScalar]] = {}
    for k, wedge in enumerate(wedge_basis(n, p)):
        for sign, i, rest in contraction_terms(wedge):
            row_offset = target[rest] * dim_next
            for b, column in enumerate(maps[i]):
                col = k * dim_q + b
                for a, value in column.items():
                    row = entries.setdefault(row_offset + a, {})
                    row[col] = row.get(col, field.zero()) + (value if sign > 0 else -value)
    return SparseMatrix.from_rows(entries, (comb(n, p - 1) * dim_next, columns), field)


class KoszulCell(NamedTuple):
    """Koszul cohomology group K_{p,q}: its dimension and, on demand, cocycle representatives.

    Representatives are columns in Λ^p V ⊗ M_q completing the image of the incoming differential to the kernel of
    the outgoing one, chosen by the leftmost independent columns of [image | kernel].
    """

    p: int
    q: int
    dimension: int
    representatives: list[Vector] | None = None


class KoszulComplex:
    """The Koszul complex of a module, with differentials, ranks and cohomology cached per (p, q)."""

    def __init__(self, module: SectionModule) -> None:
        self.module = module
        self._differentials: dict[tuple[int, int], SparseMatrix] = {}
        self._ranks: dict[tuple[int, int], int] = {}
        self._cells: dict[tuple[int, int], KoszulCell] = {}

    @property
    def field(self) -> GroundField:
        return self.module.field

    @property
    def dim_space(self) -> int:
        return self.module.dim_space

    def chain_dimension(self, p: int, q: int) -> int:
        if p < 0 or p > self.dim_space:
            return 0
        return comb(self.dim_space, p) * self.module.dimension(q)

    def differential(self, p: int, q: int) -> SparseMatrix:
        if (p, q) not in self._differentials:
            self._differentials[(p, q)] = koszul_differential(p, q, self.module)
        return self._differentials[(p, q)]

    def rank(self, p: int, q: int) -> int:
        """Rank of d_{p,q}; zero outside the complex."""
        if p <= 0 or p > self.dim_space or q < 0:
            return 0
        if (p, q) not in self._ranks:
            self._ranks[(p, q)] = rank(self.differential(p, q))
        return self._ranks[(p, q)]

    def dimension(self, p: int, q: int) -> int:
        """k_{p,q} = dim ker d_{p,q} - rank d_{p+1,q-1}."""
        if p < 0 or p > self.dim_space or q < 0:
            return 0
        self.module.require(q - 1, q, q + 1)
        value = self.chain_dimension(p, q) - self.rank(p, q) - self.rank(p + 1, q - 1)
        if value < 0:
            raise IntegrityError(f"negative cohomology dimension at ({p}, {q})")
        return value

    def incoming(self, p: int, q: int) -> SparseMatrix:
        """Matrix of d_{p+1,q-1}, with a zero-column matrix where the source is empty."""
        if q < 1 or p + 1 > self.dim_space:
            return SparseMatrix.zeros((self.chain_dimension(p, q), 0), self.field)
        return self.differential(p + 1, q - 1)

    def cell(self, p: int, q: int, representatives: bool = False) -> KoszulCell:
        """K_{p,q} with optional representatives.

        Raises:
            WindowError: If a needed piece is missing.
            IntegrityError: If the representatives do not match the dimension.
        """
        cached = self._cells.get((p, q))
        if cached is not None and (cached.representatives is not None or not representatives):
            return cached

        dimension = self.dimension(p, q)
        reps = None
        if representatives:
            reps = self._representatives(p, q)
            if len(reps) != dimension:
                raise IntegrityError(f"{len(reps)} representatives for a {dimension}-dimensional cell ({p}, {q})")
        result = KoszulCell(p=p, q=q, dimension=dimension, representatives=reps)
        self._cells[(p, q)] = result
        return result

    def _representatives(self, p: int, q: int) -> list[Vector]:
        if p < 0 or p > self.dim_space or q < 0:
            return []
        nrows = self.chain_dimension(p, q)
        if p == 0:
            kernel = [{i: self.field.one()} for i in range(nrows)]
        else:
            kernel = rank_kernel(self.differential(p, q)).kernel
        image = self.incoming(p, q)
        stacked = hstack(image, SparseMatrix.from_columns(kernel, nrows, self.field))
        columns = stacked.columns()
        return [columns[c] for c in independent_columns(stacked) if c >= image.cols]

    def class_coordinates(self, p: int, q: int, cocycles: SparseMatrix) -> SparseMatrix:
        """Coordinates of the classes of cocycles (columns) in the basis of representatives of K_{p,q}.

        Raises:
            RepresentativesError: If the representatives of the cell were not computed.
            BettilabValueError: If some column is not a cocycle.
        """
        cell = self._cells.get((p, q))
        if cell is None or cell.representatives is None:
            raise RepresentativesError(f"compute cell ({p}, {q}) with representatives first")
        image = self.incoming(p, q)
        basis = hstack(image, SparseMatrix.from_columns(cell.representatives, self.chain_dimension(p, q), self.field))
        solution = solve_in_span(basis, cocycles)
        rows = {i - image.cols: row for i, row in solution.row_dict().items() if i >= image.cols}
        return SparseMatrix.from_rows(rows, (cell.dimension, cocycles.cols), self.field)

    def check_complex(self, p: int, q: int) -> bool:
        """d_{p,q} ∘ d_{p+1,q-1} = 0."""
        if p < 1 or q < 1 or p + 1 > self.dim_space:
            return True
        return compose(self.differential(p, q), self.differential(p + 1, q - 1)).is_zero()


def koszul_cohomology_dim(p: int, q: int, module: SectionModule, representatives: bool = False) -> KoszulCell:
    """K_{p,q} of a module over its space V."""
    return KoszulComplex(module).cell(p, q, representatives=representatives)


def default_p_max(model: EmbeddedModel) -> int:
    """e + t + 1, one column past the vanishing window."""
    return model.metadata.e + model.metadata.t + 1


def make_module(
    model: EmbeddedModel,
    twist: Twist = Twist.zero,
    kind: ModuleKind = ModuleKind.section,
    field: GroundField | None = None,
    q_max: int = DEFAULT_Q_MAX,
) -> SectionModule:
    """Module with the window [-1, q_max + 1] needed by a table of height q_max."""
    return SectionModule(model, twist=twist, kind=kind, window=(-1, q_max + 1), field=field)


def table_from_complex(
    complex_: KoszulComplex, model: EmbeddedModel, p_max: int | None = None, q_max: int = DEFAULT_Q_MAX
) -> BettiTable:
    module = complex_.module
    p_max = default_p_max(model) if p_max is None else p_max
    entries = [[complex_.dimension(p, q) for p in range(p_max + 1)] for q in range(q_max + 1)]
    return BettiTable(
        model=model.descriptor,
        twist=module.twist,
        kind=module.kind,
        field=module.field.spec,
        dim_space=module.dim_space,
        p_max=p_max,
        q_max=q_max,
        entries=entries,
        seed_chain=model.seed_chain,
    )


def betti_table(
    model: EmbeddedModel,
    twist: Twist = Twist.zero,
    kind: ModuleKind = ModuleKind.section,
    field: GroundField | None = None,
    p_max: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
) -> BettiTable:
    """Betti table k_{p,q}, 0 ≤ p ≤ p_max, 0 ≤ q ≤ q_max.

    Args:
        model: The embedded model.
        twist: Twist B of the section module.
        kind: Section module over V, or coordinate ring S/I over all ambient linear forms.
        field: Field of the computation, Q by default.
        p_max: Largest p, e + t + 1 by default.
        q_max: Largest q.

    Returns:
        The table.
    """
    module = make_module(model, twist=twist, kind=kind, field=field, q_max=q_max)
    return table_from_complex(KoszulComplex(module), model, p_max=p_max, q_max=q_max)


def betti_table_checked(
    model: EmbeddedModel,
    field: GroundField,
    twist: Twist = Twist.zero,
    kind: ModuleKind = ModuleKind.section,
    p_max: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
) -> tuple[BettiTable, list[tuple[int, int]]]:
    """Table over `field` re-checked over Q; the Q table is returned together with the cells that differ.

    Disagreements are logged as warnings, the rational table is the arbiter.
    """
    fast = betti_table(model, twist=twist, kind=kind, field=field, p_max=p_max, q_max=q_max)
    if field.is_rational:
        return fast, []
    exact = betti_table(model, twist=twist, kind=kind, field=GroundField.rationals(), p_max=p_max, q_max=q_max)
    differences = exact.differences(fast)
    if differences:
        Console().log(f"[yellow]{model.descriptor}: tables over {field} and Q differ at {differences}")
    return exact, differences


def regularity_from_table(table: BettiTable) -> int:
    """Largest q with a nonzero k_{p,q}.

    Raises:
        InconclusiveError: If no zero row follows the last nonzero row, or the last column is nonzero while the
            table stops before p = dim V.
    """
    last = table.last_nonzero_row
    if last >= table.q_max:
        raise InconclusiveError(f"table of {table.model} ends at q = {table.q_max} without a zero row")
    if table.p_max < table.dim_space and any(table[table.p_max, q] for q in range(table.q_max + 1)):
        raise InconclusiveError(f"table of {table.model} is truncated at p = {table.p_max}")
    return last


def regularity(model: EmbeddedModel, field: GroundField | None = None, q_max: int = DEFAULT_Q_MAX) -> int:
    """reg(X) = reg(S/I) + 1 from the coordinate ring table."""
    table = betti_table(model, kind=ModuleKind.coordinate, field=field, q_max=q_max)
    return regularity_from_table(table) + 1


def m_normality_defect(model: EmbeddedModel, m: int, field: GroundField | None = None) -> int:
    """h¹(I_X(m)) = dim H⁰(O_X(m)) - dim (S/I)_m, with H⁰ from the linearly normal root."""
    module = SectionModule(model, window=(min(m, 0), max(m, 0)), field=field)
    return module.dimension(m) - model.hilbert_function(m)


def image_dimension(model: EmbeddedModel, m: int, field: GroundField | None = None) -> int:
    """Rank of Sym^m V → H⁰(O_X(m)), built up by multiplying by V degree by degree."""
    if m < 0:
        return 0
    module = SectionModule(model, window=(0, max(m, 1)), field=field)
    field = module.field
    image = SparseMatrix.from_columns([{0: field.one()}], module.dimension(0), field)
    for degree in range(m):
        products = [compose(matrix, image) for matrix in module.space_maps(degree)]
        stacked = hstack(*products)
        columns = stacked.columns()
        image = SparseMatrix.from_columns(
            [columns[c] for c in independent_columns(stacked)], module.dimension(degree + 1), field
        )
    return image.cols


def nk_property(table: BettiTable, k: int) -> tuple[bool, tuple[int, int] | None]:
    """N_k within the table: k_{0,q} = 0 for q ≥ 1 and k_{p,q} = 0 for 1 ≤ p ≤ k, q ≥ 2.

    Returns:
        Whether the property holds and the first failing cell (by p, then q).
    """
    if k < 0:
        raise BettilabValueError("k must be non-negative")
    if table.twist != Twist.zero:
        raise BettilabValueError("the N_k property is defined for the untwisted module")
    for p in range(min(k, table.p_max) + 1):
        for q in range(1 if p == 0 else 2, table.q_max + 1):
            if table[p, q]:
                return False, (p, q)
    return True, None


def nk_threshold(table: BettiTable) -> int:
    """Largest k ≤ p_max such that N_k holds; -1 if the model is not even projectively normal."""
    best = -1
    for k in range(table.p_max + 1):
        if not nk_property(table, k)[0]:
            break
        best = k
    return best


def euler_characteristic(complex_: KoszulComplex, s: int) -> tuple[int, int]:
    """Alternating sums Σ (-1)^p dim(Λ^p V ⊗ M_{s-p}) and Σ (-1)^p k_{p,s-p}; the two agree."""
    chains = sum((-1) ** p * complex_.chain_dimension(p, s - p) for p in range(complex_.dim_space + 1))
    cohomology = sum((-1) ** p * complex_.dimension(p, s - p) for p in range(complex_.dim_space + 1))
    return chains, cohomology


class DualityCell(NamedTuple):
    """k_{p,2}(O, V) next to k_{c-p,0}(K, V) with c = dim V - 2, and the value at the index e + 1 - p."""

    p: int
    left: int
    right: int
    literal: int | None

    @property
    def agrees(self) -> bool:
        return self.left == self.right


def green_duality_check(model: EmbeddedModel, field: GroundField | None = None) -> list[DualityCell]:
    """Compare k_{p,2}(C, V) with k_{c-p,0}(C, K_C, V) for all 0 ≤ p ≤ c, both computed directly.

    Raises:
        UnsupportedModelError: If the model is not a curve with a canonical basis.
    """
    model.require_curve()
    untwisted = KoszulComplex(make_module(model, field=field, q_max=2))
    canonical = KoszulComplex(make_module(model, twist=Twist.canonical, field=field, q_max=0))
    c = untwisted.dim_space - 2
    e = model.metadata.e
    cells = []
    for p in range(c + 1):
        literal_index = e + 1 - p
        literal = canonical.dimension(literal_index, 0) if 0 <= literal_index <= canonical.dim_space else None
        cells.append(
            DualityCell(p=p, left=untwisted.dimension(p, 2), right=canonical.dimension(c - p, 0), literal=literal)
        )
    return cells


def twisted_row(model: EmbeddedModel, field: GroundField | None = None, p_max: int | None = None) -> list[int]:
    """k_{p,0}(X, K, V) for 0 ≤ p ≤ p_max (the row used through duality)."""
    complex_ = KoszulComplex(make_module(model, twist=Twist.canonical, field=field, q_max=0))
    p_max = complex_.dim_space if p_max is None else p_max
    return [complex_.dimension(p, 0) for p in range(p_max + 1)]

