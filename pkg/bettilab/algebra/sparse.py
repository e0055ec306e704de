"""Sparse exact linear algebra on top of sympy's `DomainMatrix` in sparse (SDM) format.

All elimination is deterministic: rows are sorted shortest first and sympy's sparse reduced row echelon form walks
the columns from left to right picking the first eligible row, so ranks, kernels and representatives are
reproducible. Over Q the rows are cleared of denominators first and reduced fraction-free over ZZ.
"""

import math
from collections.abc import Mapping, Sequence
from typing import NamedTuple, Self

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from bettilab.algebra.field import FieldScalar, GroundField
from bettilab.cli.utils import Console
from bettilab.exceptions import BettilabShapeError, BettilabValueError
from bettilab.utils import derive_seed, random_integers

Vector = dict[int, FieldScalar]
"""Sparse column vector: row index -> nonzero scalar."""


class SparseMatrix:
    """Immutable sparse matrix over a `GroundField`; no explicit zeros are stored."""

    __slots__ = ("_rep", "field")

    def __init__(self, rep: DomainMatrix, field: GroundField) -> None:
        self._rep = rep.to_sparse()
        self.field = field

    @classmethod
    def from_rows(
        cls, rows: Mapping[int, Mapping[int, FieldScalar]], shape: tuple[int, int], field: GroundField
    ) -> Self:
        """Build a matrix from a dict of rows whose entries already live in `field.domain`."""
        nrows, ncols = shape
        clean: dict[int, dict[int, FieldScalar]] = {}
        for i, row in rows.items():
            if not 0 <= i < nrows:
                raise BettilabShapeError(f"row index {i} outside of {nrows} rows")
            kept = {j: v for j, v in row.items() if v}
            if any(not 0 <= j < ncols for j in kept):
                raise BettilabShapeError(f"column index outside of {ncols} columns")
            if kept:
                clean[i] = kept
        return cls(DomainMatrix(clean, shape, field.domain), field)

    @classmethod
    def from_entries(
        cls, entries: Mapping[tuple[int, int], int | FieldScalar], shape: tuple[int, int], field: GroundField
    ) -> Self:
        """Build a matrix from `(row, col) -> value` with integer or rational values, converted into `field`."""
        rows: dict[int, dict[int, FieldScalar]] = {}
        for (i, j), value in entries.items():
            rows.setdefault(i, {})[j] = field.convert(value)
        return cls.from_rows(rows, shape, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int, field: GroundField) -> Self:
        rows: dict[int, dict[int, FieldScalar]] = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                rows.setdefault(i, {})[j] = value
        return cls.from_rows(rows, (nrows, len(columns)), field)

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]], field: GroundField, ncols: int | None = None) -> Self:
        """Build a matrix from a dense list of integer rows (handy in tests)."""
        ncols = ncols if ncols is not None else (len(lists[0]) if lists else 0)
        entries = {(i, j): v for i, row in enumerate(lists) for j, v in enumerate(row) if v}
        return cls.from_entries(entries, (len(lists), ncols), field)

    @classmethod
    def zeros(cls, shape: tuple[int, int], field: GroundField) -> Self:
        return cls(DomainMatrix({}, shape, field.domain), field)

    @classmethod
    def identity(cls, n: int, field: GroundField) -> Self:
        return cls.from_rows({i: {i: field.one()} for i in range(n)}, (n, n), field)

    @property
    def shape(self) -> tuple[int, int]:
        return self._rep.shape

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    @property
    def domain_matrix(self) -> DomainMatrix:
        return self._rep

    def row_dict(self) -> dict[int, dict[int, FieldScalar]]:
        return {i: {j: v for j, v in row.items() if v} for i, row in self._rep.to_sdm().items()}

    def entries(self) -> dict[tuple[int, int], FieldScalar]:
        return {(i, j): v for i, row in self.row_dict().items() for j, v in row.items()}

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.row_dict().values())

    def is_zero(self) -> bool:
        return self.nnz == 0

    def columns(self) -> list[Vector]:
        cols: list[Vector] = [{} for _ in range(self.cols)]
        for i, row in self.row_dict().items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self._rep.transpose(), self.field)

    def to_field(self, field: GroundField) -> "SparseMatrix":
        """Reduce a rational matrix into another field (identity if the field is the same)."""
        if field == self.field:
            return self
        if not self.field.is_rational:
            raise BettilabValueError(f"cannot convert a matrix over {self.field} into {field}")
        rows = {i: {j: field.convert(v) for j, v in row.items()} for i, row in self.row_dict().items()}
        return SparseMatrix.from_rows(rows, self.shape, field)

    def to_lists(self) -> list[list[FieldScalar]]:
        dense = [[self.field.zero() for _ in range(self.cols)] for _ in range(self.rows)]
        for (i, j), v in self.entries().items():
            dense[i][j] = v
        return dense

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return compose(self, other)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape or self.field != other.field:
            raise BettilabShapeError(f"cannot add {self.shape} over {self.field} and {other.shape} over {other.field}")
        return SparseMatrix(self._rep + other._rep, self.field)

    def scale(self, scalar: FieldScalar) -> "SparseMatrix":
        if not scalar:
            return SparseMatrix.zeros(self.shape, self.field)
        return SparseMatrix(self._rep * scalar, self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash((self.shape, self.field, frozenset(self.entries().items())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols} over {self.field}, nnz={self.nnz})"


class RankKernel(NamedTuple):
    rank: int
    kernel: list[Vector]


class Echelon(NamedTuple):
    """Reduced row echelon form `rows` with every pivot entry equal to `den` (a field element)."""

    rows: dict[int, dict[int, FieldScalar]]
    pivots: tuple[int, ...]
    den: FieldScalar


def hstack(*matrices: SparseMatrix) -> SparseMatrix:
    """Juxtapose matrices with the same number of rows."""
    if not matrices:
        raise BettilabValueError("nothing to stack")
    field, nrows = matrices[0].field, matrices[0].rows
    rows: dict[int, dict[int, FieldScalar]] = {}
    offset = 0
    for m in matrices:
        if m.rows != nrows or m.field != field:
            raise BettilabShapeError(f"cannot stack {m.shape} over {m.field} next to {nrows} rows over {field}")
        for i, row in m.row_dict().items():
            target = rows.setdefault(i, {})
            for j, v in row.items():
                target[j + offset] = v
        offset += m.cols
    return SparseMatrix.from_rows(rows, (nrows, offset), field)


def compose(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    """Exact product `A·B` with explicit zeros dropped.

    Raises:
        BettilabShapeError: If the column count of A differs from the row count of B.
    """
    if A.cols != B.rows:
        raise BettilabShapeError(f"cannot compose {A.shape} with {B.shape}")
    if A.field != B.field:
        raise BettilabShapeError(f"cannot compose matrices over {A.field} and {B.field}")
    product = A.domain_matrix.matmul(B.domain_matrix)
    return SparseMatrix.from_rows(product.to_sdm(), product.shape, A.field)


def linear_combination(coefficients: Sequence[FieldScalar], matrices: Sequence[SparseMatrix]) -> SparseMatrix:
    """Return Σ c_i·M_i for matrices of one shape over one field."""
    if not matrices or len(coefficients) != len(matrices):
        raise BettilabValueError("need one coefficient per matrix")
    result = SparseMatrix.zeros(matrices[0].shape, matrices[0].field)
    for c, m in zip(coefficients, matrices, strict=True):
        if c:
            result = result + m.scale(c)
    return result


def echelon(M: SparseMatrix) -> Echelon:
    """Reduced row echelon form of `M`.

    Over Q every row is multiplied by the lcm of its denominators and the integer matrix is reduced fraction-free, so
    that intermediate coefficients stay integral; the result is mapped back with the common pivot value `den`.

    Rows are handed to the elimination shortest first, so that pivots come from the sparsest rows and fill-in stays
    low. The reduced form itself does not depend on the row order.
    """
    field = M.field
    if M.is_zero():
        return Echelon(rows={}, pivots=(), den=field.one())

    ordered = dict(enumerate(row for _, row in sorted(M.row_dict().items(), key=lambda item: (len(item[1]), item[0]))))
    if field.is_rational:
        integral: dict[int, dict[int, int]] = {}
        for i, row in ordered.items():
            scale = math.lcm(*(int(QQ.denom(v)) for v in row.values()))
            integral[i] = {j: ZZ(int(QQ.numer(v)) * (scale // int(QQ.denom(v)))) for j, v in row.items()}
        reduced, den, pivots = DomainMatrix(integral, M.shape, ZZ).rref_den(keep_domain=True)
        rows = {
            i: {j: QQ.convert(int(v)) for j, v in row.items() if v} for i, row in reduced.to_sdm().items()
        }
        return Echelon(rows=rows, pivots=tuple(pivots), den=QQ.convert(int(den)))

    reduced, pivots = DomainMatrix(ordered, M.shape, field.domain).rref()
    return Echelon(rows=dict(reduced.to_sdm()), pivots=tuple(pivots), den=field.one())


def rank(M: SparseMatrix) -> int:
    return len(echelon(M).pivots)


def rank_kernel(M: SparseMatrix) -> RankKernel:
    """Rank and a kernel basis of `M`.

    For every non-pivot column f the basis contains the vector with `den` at f and `-R[i][f]` at the pivot of row i.

    Args:
        M: The matrix.

    Returns:
        The rank and the list of kernel basis vectors (sparse columns of length `M.cols`).
    """
    ech = echelon(M)
    pivot_of_row = {}
    for i, row in ech.rows.items():
        pivot_of_row[i] = min(j for j in row if row[j])
    pivot_cols = set(ech.pivots)

    kernel_by_col: dict[int, Vector] = {f: {f: ech.den} for f in range(M.cols) if f not in pivot_cols}
    for i, row in ech.rows.items():
        for f, value in row.items():
            if f in kernel_by_col and value:
                kernel_by_col[f][pivot_of_row[i]] = -value
    kernel = [kernel_by_col[f] for f in sorted(kernel_by_col)]

    result = RankKernel(rank=len(ech.pivots), kernel=kernel)
    assert result.rank + len(result.kernel) == M.cols, "rank-nullity violated"
    return result


def independent_columns(M: SparseMatrix) -> tuple[int, ...]:
    """Indices of the leftmost maximal set of linearly independent columns."""
    return echelon(M).pivots


def solve_in_span(A: SparseMatrix, Y: SparseMatrix) -> SparseMatrix:
    """Coordinates X with `A·X = Y`, taking zero coordinates on dependent columns of A.

    Raises:
        BettilabValueError: If some column of Y is outside of the column span of A.
    """
    if A.rows != Y.rows:
        raise BettilabShapeError(f"cannot solve {A.shape} against {Y.shape}")
    k = A.cols
    ech = echelon(hstack(A, Y))
    if any(c >= k for c in ech.pivots):
        raise BettilabValueError("vector outside of the span")
    solution: dict[int, dict[int, FieldScalar]] = {}
    for row in ech.rows.values():
        pivot = min(row)
        solution[pivot] = {j - k: v / ech.den for j, v in row.items() if j >= k and v}
    return SparseMatrix.from_rows(solution, (k, Y.cols), A.field)


def rank_trial(trials: int = 20, size: int = 40, seed: int = 0, prime: int = 32003, bound: int = 5) -> list[int]:
    """Compare ranks over Q and over F_p on seeded random integer matrices.

    Matrices are built as products of `size × s` and `s × size` factors with a random inner size s, so that all ranks
    up to `size` occur.

    Args:
        trials: Number of matrices.
        size: The matrices are `size × size`.
        seed: Seed of the trial batch.
        prime: Characteristic of the prime field.
        bound: Entries of the factors are drawn from [-bound, bound].

    Returns:
        Indices of the trials where the two ranks differ (logged, never dropped).
    """
    rationals, finite = GroundField.rationals(), GroundField.prime_field(prime)
    mismatches = []
    for trial in range(trials):
        inner = 1 + derive_seed(seed, trial, 0) % size
        left = random_integers(derive_seed(seed, trial, 1), size * inner, bound)
        right = random_integers(derive_seed(seed, trial, 2), inner * size, bound)
        A = SparseMatrix.from_lists([left[i * inner : (i + 1) * inner] for i in range(size)], rationals, inner)
        B = SparseMatrix.from_lists([right[i * size : (i + 1) * size] for i in range(inner)], rationals, size)
        M = compose(A, B)
        rank_q, rank_p = rank(M), rank(M.to_field(finite))
        if rank_q != rank_p:
            Console().log(f"[yellow]rank mismatch in trial {trial}: {rank_q} over Q, {rank_p} over {finite}")
            mismatches.append(trial)
    return mismatches
