"""Graded modules over Sym V: section modules R(X, B, H) and homogeneous coordinate rings S/I.

A module is given by a basis of every graded piece in a window and by the maps "multiplication by a coordinate"
between consecutive pieces. Pieces of a section module come from the linearly normal root of the model: from its
coordinate ring for the zero twist, from the function field of the curve for the canonical twist.
"""

from collections.abc import Sequence
from functools import cached_property

from bettilab.algebra.field import FieldScalar, GroundField
from bettilab.algebra.groebner import GroebnerBasis
from bettilab.algebra.polynomial import Monomial, Polynomial
from bettilab.algebra.sparse import SparseMatrix, Vector, compose, linear_combination
from bettilab.curves import FunctionField, embedding_monomials
from bettilab.enums import ModuleKind, Twist
from bettilab.exceptions import BettilabValueError, IntegrityError, UnsupportedModelError, WindowError
from bettilab.models.model import EmbeddedModel

DEFAULT_WINDOW = (-1, 4)


def linear_coefficients(f: Polynomial, nvars: int) -> list[FieldScalar]:
    """Coefficients of a linear form, one per variable."""
    terms = dict(f.terms())
    zero = f.ring.domain.zero
    return [terms.get(tuple(1 if k == i else 0 for k in range(nvars)), zero) for i in range(nvars)]


class SectionModule:
    """Graded module M = ⊕ M_m for m in `window`, with multiplication by the coordinates of the source ring.

    Args:
        model: The embedded model.
        twist: The twist B; `canonical` needs a curve with function field data.
        kind: `section` for R(X, B, H) over the model's V, `coordinate` for S/I over all ambient linear forms.
        window: The range (lo, hi) of degrees m whose pieces are available.
        field: The field of the multiplication matrices (pieces are always built over Q).

    Raises:
        BettilabValueError: If the window is empty or a coordinate ring is requested with a twist.
        UnsupportedModelError: If the canonical twist is requested for a model without a canonical basis.
    """

    def __init__(
        self,
        model: EmbeddedModel,
        twist: Twist = Twist.zero,
        kind: ModuleKind = ModuleKind.section,
        window: tuple[int, int] = DEFAULT_WINDOW,
        field: GroundField | None = None,
    ) -> None:
        if window[0] > window[1]:
            raise BettilabValueError(f"empty module window {window}")
        if kind == ModuleKind.coordinate and twist != Twist.zero:
            raise BettilabValueError("the coordinate ring has no twist")
        if twist == Twist.canonical and model.metadata.n != 1:
            raise UnsupportedModelError(f"no canonical basis available for {model.descriptor}")

        self.model = model
        self.twist = twist
        self.kind = kind
        self.window = window
        self.field = field or GroundField.rationals()
        self._rational_maps: dict[int, list[SparseMatrix]] = {}
        self._maps: dict[int, list[SparseMatrix]] = {}
        self._space_maps: dict[int, list[SparseMatrix]] = {}

        self.source = model if kind == ModuleKind.coordinate else model.root_model
        self._function_field: FunctionField | None = None
        if twist == Twist.canonical:
            self._function_field = FunctionField(model.require_curve())

    def __repr__(self) -> str:
        return (
            f"SectionModule({self.model.descriptor}, twist={self.twist.value}, kind={self.kind.value}, "
            f"window={self.window[0]}..{self.window[1]}, field={self.field})"
        )

    @property
    def nsource(self) -> int:
        """Number of coordinates of the source ring."""
        return self.source.ambient + 1

    @cached_property
    def space(self) -> list[list[FieldScalar]]:
        """Basis of V as coefficient vectors in the source coordinates."""
        if self.kind == ModuleKind.coordinate:
            return [[1 if i == j else 0 for j in range(self.nsource)] for i in range(self.nsource)]
        return [linear_coefficients(f, self.nsource) for f in self.model.subspace]

    @property
    def dim_space(self) -> int:
        return len(self.space)

    def require(self, *degrees: int) -> None:
        """Raise `WindowError` unless all pieces `degrees` lie in the window; negative pieces are always zero."""
        lo, hi = self.window
        missing = [m for m in degrees if m >= 0 and not lo <= m <= hi]
        if missing:
            raise WindowError(missing, self.window)

    @property
    def _groebner(self) -> GroebnerBasis:
        return self.source.groebner

    @property
    def _twist_order(self) -> int:
        assert self._function_field is not None
        return self._function_field.canonical_order

    def basis(self, m: int) -> list[Monomial]:
        """Labels of the basis of piece m: standard monomials, or monomials y^j·x^i of the function field."""
        if m < 0:
            return []
        self.require(m)
        if self._function_field is not None:
            return self._function_field.basis(self._twist_order + m * self.model.metadata.d)
        return self._groebner.standard_monomials(m)

    def dimension(self, m: int) -> int:
        return len(self.basis(m))

    def _products(self, m: int) -> list[SparseMatrix]:
        """Multiplication by every source coordinate, piece m to piece m + 1, over Q."""
        if m in self._rational_maps:
            return self._rational_maps[m]
        rationals = GroundField.rationals()
        source_basis, target_basis = self.basis(m), self.basis(m + 1)
        shape = (len(target_basis), len(source_basis))
        maps = []
        for i in range(self.nsource):
            columns = [self._product(mu, i, m) for mu in source_basis]
            matrix = SparseMatrix.from_columns(columns, shape[0], rationals)
            if matrix.shape != shape:
                raise IntegrityError(f"multiplication map of shape {matrix.shape}, expected {shape}")
            maps.append(matrix)
        self._rational_maps[m] = maps
        return maps

    def _product(self, mu: Monomial, i: int, m: int) -> Vector:
        if self._function_field is not None:
            ff = self._function_field
            nu = embedding_monomials(ff.curve)[i]
            product = ff.element((mu[0] + nu[0], mu[1] + nu[1]))
            return ff.coordinates(product, self._twist_order + (m + 1) * self.model.metadata.d)

        G = self._groebner
        exponents = tuple(e + (1 if k == i else 0) for k, e in enumerate(mu))
        remainder = G.normal_form(G.ring.monomial(exponents))
        index = {nu: k for k, nu in enumerate(G.standard_monomials(m + 1))}
        try:
            return {index[nu]: c for nu, c in remainder.terms()}
        except KeyError:
            raise IntegrityError("normal form left the standard monomials") from None

    def coordinate_maps(self, m: int) -> list[SparseMatrix]:
        """Multiplication by every source coordinate x_i, from piece m to piece m + 1, over the module field.

        Raises:
            WindowError: If piece m or m + 1 is outside the window.
        """
        self.require(m, m + 1)
        if m not in self._maps:
            self._maps[m] = [matrix.to_field(self.field) for matrix in self._products(m)]
        return self._maps[m]

    def multiplication(self, coefficients: Sequence[int | FieldScalar], m: int) -> SparseMatrix:
        """Multiplication by the linear form Σ c_i·x_i of the source ring, from piece m to piece m + 1."""
        if len(coefficients) != self.nsource:
            raise BettilabValueError(f"a linear form needs {self.nsource} coefficients")
        maps = self.coordinate_maps(m)
        values = [self.field.convert(c) for c in coefficients]
        return linear_combination(values, maps)

    def space_maps(self, m: int) -> list[SparseMatrix]:
        """Multiplication by every basis vector of V, from piece m to piece m + 1."""
        if m not in self._space_maps:
            self._space_maps[m] = [self.multiplication(v, m) for v in self.space]
        return self._space_maps[m]

    def check_commutes(self, m: int) -> bool:
        """(ℓ1·)∘(ℓ2·) = (ℓ2·)∘(ℓ1·) from piece m to piece m + 2 for all pairs of coordinates."""
        first, second = self.coordinate_maps(m), self.coordinate_maps(m + 1)
        return all(
            compose(second[i], first[j]) == compose(second[j], first[i])
            for i in range(self.nsource)
            for j in range(i + 1, self.nsource)
        )


def section_module(
    model: EmbeddedModel,
    twist: Twist = Twist.zero,
    window: tuple[int, int] = DEFAULT_WINDOW,
    field: GroundField | None = None,
) -> SectionModule:
    """Section module R(X, B, H) of a model over its coordinate space V."""
    return SectionModule(model, twist=twist, kind=ModuleKind.section, window=window, field=field)


def coordinate_ring(
    model: EmbeddedModel, window: tuple[int, int] = DEFAULT_WINDOW, field: GroundField | None = None
) -> SectionModule:
    """Homogeneous coordinate ring S/I of a model over all ambient linear forms."""
    return SectionModule(model, kind=ModuleKind.coordinate, window=window, field=field)
