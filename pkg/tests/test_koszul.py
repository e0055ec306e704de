import pytest

from bettilab.algebra.field import GroundField
from bettilab.algebra.sparse import SparseMatrix
from bettilab.catalog import scroll, veronese_surface
from bettilab.enums import ModuleKind, Twist
from bettilab.exceptions import BettilabValueError, InconclusiveError, RepresentativesError, UnsupportedModelError
from bettilab.koszul import (
    KoszulComplex,
    betti_table,
    betti_table_checked,
    contraction_terms,
    default_p_max,
    euler_characteristic,
    green_duality_check,
    image_dimension,
    koszul_differential,
    m_normality_defect,
    make_module,
    nk_property,
    nk_threshold,
    regularity,
    regularity_from_table,
    twisted_row,
    wedge_basis,
    wedge_index,
)
from bettilab.models.betti import BettiTable
from bettilab.section import section_module


class TestWedges:
    def test_wedge_basis(self):
        assert len(wedge_basis(4, 2)) == 6
        assert wedge_basis(3, 0) == ((),)
        assert wedge_basis(3, -1) == ()
        assert wedge_basis(2, 3) == ()

    def test_wedge_index(self):
        index = wedge_index(5, 3)
        assert all(index[wedge] == k for k, wedge in enumerate(wedge_basis(5, 3)))

    def test_contraction_signs(self):
        assert contraction_terms((0, 2, 3)) == [(-1, 0, (2, 3)), (1, 2, (0, 3)), (-1, 3, (0, 2))]
        assert contraction_terms(()) == []


class TestKoszulComplex:
    @pytest.fixture
    def complex_(self, twisted_cubic):
        return KoszulComplex(make_module(twisted_cubic, q_max=2))

    def test_differential_shape(self, twisted_cubic):
        module = section_module(twisted_cubic)
        assert koszul_differential(2, 1, module).shape == (4 * 7, 6 * 4)
        assert koszul_differential(0, 1, module).shape == (0, 4)

    @pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2)])
    def test_square_zero(self, complex_, p, q):
        assert complex_.check_complex(p, q)

    def test_dimensions(self, complex_):
        assert [complex_.dimension(p, 1) for p in range(5)] == [0, 3, 2, 0, 0]
        assert complex_.dimension(0, 0) == 1
        assert complex_.dimension(-1, 1) == 0

    @pytest.mark.parametrize("s", [1, 2])
    def test_euler_characteristic(self, complex_, s):
        chains, cohomology = euler_characteristic(complex_, s)
        assert chains == cohomology

    def test_representatives(self, complex_):
        cell = complex_.cell(1, 1, representatives=True)
        assert cell.dimension == 3
        assert cell.representatives is not None and len(cell.representatives) == 3
        cocycles = SparseMatrix.from_columns(cell.representatives, complex_.chain_dimension(1, 1), complex_.field)
        assert complex_.class_coordinates(1, 1, cocycles) == SparseMatrix.identity(3, complex_.field)

    def test_class_coordinates_need_representatives(self, complex_):
        cocycles = SparseMatrix.zeros((complex_.chain_dimension(2, 1), 1), complex_.field)
        with pytest.raises(RepresentativesError):
            complex_.class_coordinates(2, 1, cocycles)


class TestBettiTable:
    def test_twisted_cubic(self, twisted_cubic):
        table = betti_table(twisted_cubic, q_max=2)
        assert table.p_max == default_p_max(twisted_cubic) == 3
        assert table.entries == [[1, 0, 0, 0], [0, 3, 2, 0], [0, 0, 0, 0]]

    def test_rational_normal_quartic(self, rational_quartic):
        table = betti_table(rational_quartic, q_max=2)
        assert table.entries[1] == [0, 6, 8, 3, 0]
        assert table.row_is_zero(2)

    def test_elliptic_quintic(self, elliptic_quintic):
        table = betti_table(elliptic_quintic, p_max=4)
        assert table.entries == [
            [1, 0, 0, 0, 0],
            [0, 5, 5, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0],
        ]
        assert table.seed_chain == elliptic_quintic.seed_chain

    def test_veronese_surface(self):
        assert betti_table(veronese_surface(), q_max=2).entries[1][:4] == [0, 6, 8, 3]

    def test_quadric_surface(self):
        table = betti_table(scroll([1, 1]), kind=ModuleKind.coordinate, q_max=2)
        assert table[1, 1] == 1
        assert table.row_is_zero(2)

    def test_prime_field_matches_rationals(self, twisted_cubic):
        table, differences = betti_table_checked(twisted_cubic, GroundField.prime_field(101), q_max=2)
        assert differences == []
        assert table.field == "q"

    def test_coordinate_ring_of_projected_model(self, projected_quartic):
        table = betti_table(projected_quartic, kind=ModuleKind.coordinate, q_max=3)
        assert table[1, 1] == 1
        assert table[1, 2] == 3


class TestRegularity:
    def test_twisted_cubic(self, twisted_cubic):
        assert regularity(twisted_cubic) == 2

    def test_elliptic_quintic(self, elliptic_quintic):
        assert regularity(elliptic_quintic) == 3

    def test_projected_quartic(self, projected_quartic):
        assert regularity(projected_quartic) == 3

    def test_inconclusive_without_zero_row(self):
        table = BettiTable(
            model="m", field="q", dim_space=4, p_max=3, q_max=1, entries=[[1, 0, 0, 0], [0, 3, 2, 0]]
        )
        with pytest.raises(InconclusiveError):
            regularity_from_table(table)

    def test_inconclusive_when_truncated(self):
        table = BettiTable(model="m", field="q", dim_space=4, p_max=1, q_max=2, entries=[[1, 0], [0, 3], [0, 0]])
        with pytest.raises(InconclusiveError):
            regularity_from_table(table)

    def test_normality(self, twisted_cubic, projected_quartic):
        assert m_normality_defect(twisted_cubic, 2) == 0
        assert m_normality_defect(projected_quartic, 1) == 1
        assert image_dimension(projected_quartic, 1) == 4
        assert image_dimension(twisted_cubic, 2) == 7
        assert image_dimension(twisted_cubic, -1) == 0


class TestNkProperty:
    def test_twisted_cubic(self, twisted_cubic):
        table = betti_table(twisted_cubic, q_max=2)
        assert nk_property(table, 3) == (True, None)
        assert nk_threshold(table) == 3

    def test_elliptic_quintic(self, elliptic_quintic):
        table = betti_table(elliptic_quintic, p_max=4)
        assert nk_property(table, 2) == (True, None)
        assert nk_property(table, 3) == (False, (3, 2))
        assert nk_threshold(table) == 2

    def test_invalid(self, twisted_cubic):
        table = betti_table(twisted_cubic, q_max=2)
        with pytest.raises(BettilabValueError):
            nk_property(table, -1)


class TestDuality:
    def test_twisted_row(self, elliptic_quintic):
        assert twisted_row(elliptic_quintic) == [1, 0, 0, 0, 0, 0]

    def test_green_duality(self, elliptic_quintic):
        cells = green_duality_check(elliptic_quintic)
        assert len(cells) == 4
        assert all(cell.agrees for cell in cells)
        assert [cell.left for cell in cells] == [0, 0, 0, 1]

    def test_twisted_table_rejects_nk(self, elliptic_quintic):
        table = betti_table(elliptic_quintic, twist=Twist.canonical, q_max=0)
        with pytest.raises(BettilabValueError):
            nk_property(table, 1)

    def test_needs_a_curve(self):
        with pytest.raises(UnsupportedModelError):
            green_duality_check(veronese_surface())
