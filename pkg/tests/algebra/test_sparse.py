import pytest

from bettilab.algebra.field import GroundField
from bettilab.algebra.sparse import (
    SparseMatrix,
    compose,
    echelon,
    hstack,
    independent_columns,
    linear_combination,
    rank,
    rank_kernel,
    rank_trial,
    solve_in_span,
)
from bettilab.exceptions import BettilabShapeError, BettilabValueError

Q = GroundField.rationals()


class TestSparseMatrix:
    def test_no_explicit_zeros(self):
        M = SparseMatrix.from_lists([[0, 1], [0, 0]], Q)
        assert M.nnz == 1
        assert M.entries() == {(0, 1): 1}

    def test_row_outside_shape(self):
        with pytest.raises(BettilabShapeError):
            SparseMatrix.from_rows({3: {0: Q.one()}}, (2, 2), Q)

    def test_transpose(self):
        M = SparseMatrix.from_lists([[1, 2, 3]], Q)
        assert M.transpose().shape == (3, 1)
        assert M.transpose().transpose() == M

    def test_identity_is_neutral(self):
        M = SparseMatrix.from_lists([[1, 2], [3, 4], [5, 6]], Q)
        assert compose(M, SparseMatrix.identity(2, Q)) == M
        assert SparseMatrix.identity(3, Q) @ M == M

    def test_compose_shape_mismatch(self):
        with pytest.raises(BettilabShapeError):
            compose(SparseMatrix.zeros((2, 3), Q), SparseMatrix.zeros((2, 3), Q))

    def test_hstack(self):
        A = SparseMatrix.from_lists([[1], [0]], Q)
        B = SparseMatrix.from_lists([[0, 2], [3, 0]], Q)
        assert hstack(A, B) == SparseMatrix.from_lists([[1, 0, 2], [0, 3, 0]], Q)

    def test_linear_combination(self):
        A = SparseMatrix.from_lists([[1, 0], [0, 1]], Q)
        B = SparseMatrix.from_lists([[0, 1], [1, 0]], Q)
        result = linear_combination([Q.convert(2), Q.convert(-1)], [A, B])
        assert result == SparseMatrix.from_lists([[2, -1], [-1, 2]], Q)


class TestRankKernel:
    @pytest.mark.parametrize(
        "lists,expected",
        [
            ([[1, 2], [2, 4]], 1),
            ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
            ([[0, 0], [0, 0]], 0),
            ([[1, 1, 1], [1, 2, 3], [2, 3, 4]], 2),
        ],
    )
    def test_rank_nullity(self, lists, expected):
        M = SparseMatrix.from_lists(lists, Q)
        result = rank_kernel(M)
        assert result.rank == rank(M) == expected
        assert len(result.kernel) == M.cols - expected
        if result.kernel:
            assert compose(M, SparseMatrix.from_columns(result.kernel, M.cols, Q)).is_zero()

    def test_rank_depends_on_characteristic(self):
        lists = [[3, 0], [0, 1]]
        assert rank(SparseMatrix.from_lists(lists, Q)) == 2
        assert rank(SparseMatrix.from_lists(lists, GroundField.prime_field(3))) == 1

    def test_rational_entries(self):
        M = SparseMatrix.from_entries({(0, 0): Q.convert(1) / 2, (1, 0): Q.convert(1) / 3}, (2, 1), Q)
        assert rank(M) == 1

    @pytest.mark.parametrize("field", [Q, GroundField.prime_field(101)], ids=["rationals", "f101"])
    def test_echelon_ignores_row_order(self, field):
        lists = [[1, 2, 3, 4], [0, 0, 1, 0], [2, 4, 7, 9], [0, 0, 0, 5]]
        forward = echelon(SparseMatrix.from_lists(lists, field))
        backward = echelon(SparseMatrix.from_lists(lists[::-1], field))

        def normalized(result):
            return [{j: v / result.den for j, v in row.items()} for _, row in sorted(result.rows.items()) if row]

        assert forward.pivots == backward.pivots == (0, 2, 3)
        assert normalized(forward) == normalized(backward)

    def test_independent_columns_leftmost(self):
        M = SparseMatrix.from_lists([[1, 2, 0], [0, 0, 1]], Q)
        assert independent_columns(M) == (0, 2)

    def test_rank_trial_agrees(self):
        assert rank_trial(trials=5, size=8, seed=1) == []


class TestSolveInSpan:
    def test_solution(self):
        A = SparseMatrix.from_lists([[1, 0], [0, 1], [1, 1]], Q)
        Y = SparseMatrix.from_lists([[2], [3], [5]], Q)
        X = solve_in_span(A, Y)
        assert compose(A, X) == Y
        assert X.to_lists() == [[2], [3]]

    def test_outside_span(self):
        A = SparseMatrix.from_lists([[1, 0], [0, 1], [1, 1]], Q)
        with pytest.raises(BettilabValueError):
            solve_in_span(A, SparseMatrix.from_lists([[1], [0], [0]], Q))
