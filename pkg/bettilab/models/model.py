from functools import cached_property
from pathlib import Path
from typing import Annotated, Self

from annotated_types import Ge
from pydantic import FilePath, ValidationError, model_validator, validate_call

from bettilab.algebra.groebner import GroebnerBasis, buchberger
from bettilab.algebra.hilbert import HilbertPolynomial, hilbert_function, hilbert_polynomial
from bettilab.algebra.polynomial import Polynomial, PolynomialRing, is_linear_form, polynomial_ring
from bettilab.exceptions import BettilabPathError, BettilabValueError, UnsupportedModelError
from bettilab.models.base import BettilabFrozenModel
from bettilab.models.projection import ProjectionRecord
from bettilab.types import TypeDimension, TypeSeed, TypeVariableName
from bettilab.utils import write_if_different

__all__ = [
    "CurveData",
    "EmbeddedModel",
    "ModelMetadata",
    "dump_model",
    "load_model",
]


class ModelMetadata(BettilabFrozenModel):
    """Invariants of an embedded variety X ⊂ P^r.

    Attributes:
        n: Dimension of X.
        d: Degree.
        e: Codimension r - n.
        g: Sectional genus (genus of a general curve section).
        gonality: Gonality of a general curve section, if known.
        linearly_normal: Whether the coordinates span all of H⁰(O_X(1)).
        t: Codimension of the coordinate space V in H⁰(O_X(1)).
        positive: Whether O_X(1) is in the sufficiently positive regime (d ≥ 2g + 3 for the curve section).
        smooth: Smoothness of X (catalog knowledge).
        h1_vanishes: H¹(O_X) = 0 (catalog knowledge, only meaningful for n ≥ 2).
        o_two_regular: reg(O_X) ≤ 2 (catalog knowledge).
    """

    n: TypeDimension
    d: Annotated[int, Ge(1)]
    e: TypeDimension
    g: Annotated[int, Ge(0)]
    gonality: Annotated[int, Ge(1)] | None = None
    linearly_normal: bool = True
    t: TypeDimension = 0
    positive: bool = True
    smooth: bool = True
    h1_vanishes: bool = True
    o_two_regular: bool = True

    @model_validator(mode="after")
    def t_matches_linear_normality(self) -> Self:
        if self.linearly_normal != (self.t == 0):
            raise ValueError("t must be 0 exactly for linearly normal models")
        return self


class CurveData(BettilabFrozenModel):
    """Plane model y² = f(x) of a curve embedded by the complete linear system |d·P∞|.

    The coordinates of the embedding are the monomials x^i·y^j (j ≤ 1) with pole order 2i + j·(2g+1) ≤ d at the
    point at infinity, sorted by pole order.

    Attributes:
        genus: Genus g ≥ 1.
        degree: Degree d of the embedding.
        f: Integer coefficients of the monic polynomial f of degree 2g + 1, lowest degree first.
    """

    genus: Annotated[int, Ge(1)]
    degree: Annotated[int, Ge(1)]
    f: list[int]

    @model_validator(mode="after")
    def f_is_monic_of_odd_degree(self) -> Self:
        if len(self.f) != 2 * self.genus + 2 or self.f[-1] != 1:
            raise ValueError(f"f must be monic of degree {2 * self.genus + 1}")
        return self


class EmbeddedModel(BettilabFrozenModel):
    """A projective variety X ⊂ P^r given by a homogeneous ideal, with metadata.

    Linearly normal models carry no `root`; a projected model keeps the linearly normal model it comes from in `root`
    and the basis of its coordinate space V as linear forms in the root's variables in `parent_subspace`.

    Attributes:
        name: Constructor name of the catalog entry.
        params: Constructor parameters.
        ambient: r, the dimension of the ambient projective space.
        variables: Names of the r + 1 homogeneous coordinates.
        generators: Generators of the ideal in the text syntax.
        metadata: Invariants.
        seed: Seed of the randomized construction, None for deterministic constructions.
        curve: Function field data of a curve, needed for the canonical twist.
        parent_subspace: Basis of V as linear forms in the root's variables (projected models only).
        root: The linearly normal model this one was projected from.
        chain: The projection steps from the root to this model.
    """

    name: str
    params: dict[str, int | list[int]] = {}
    ambient: TypeDimension
    variables: list[TypeVariableName]
    generators: list[str]
    metadata: ModelMetadata
    seed: TypeSeed | None = None
    curve: CurveData | None = None
    parent_subspace: list[str] | None = None
    root: "EmbeddedModel | None" = None
    chain: list[ProjectionRecord] = []

    @model_validator(mode="after")
    def check_consistency(self) -> Self:
        if len(self.variables) != self.ambient + 1:
            raise ValueError(f"P^{self.ambient} needs {self.ambient + 1} variables")
        if self.metadata.e != self.ambient - self.metadata.n:
            raise ValueError("codimension e must equal r - n")
        projected = self.root is not None
        if projected != (self.parent_subspace is not None) or projected == self.metadata.linearly_normal:
            raise ValueError("exactly the projected models carry a root and a parent subspace")
        if self.root is not None and self.parent_subspace is not None:
            if self.root.root is not None:
                raise ValueError("the root of a projected model must be linearly normal")
            if len(self.parent_subspace) != self.ambient + 1:
                raise ValueError(f"the parent subspace needs {self.ambient + 1} linear forms")
            if self.metadata.t != self.root.ambient - self.ambient:
                raise ValueError("t must equal the drop of the ambient dimension")
            if len(self.chain) != self.metadata.t:
                raise ValueError("one projection record per step is required")
        return self

    @cached_property
    def ring(self) -> PolynomialRing:
        return polynomial_ring(tuple(self.variables))

    @cached_property
    def ideal(self) -> list[Polynomial]:
        try:
            return [self.ring.parse(g) for g in self.generators]
        except BettilabValueError as e:
            raise BettilabValueError(f"invalid generator in model {self.descriptor}: {e}") from None

    @cached_property
    def groebner(self) -> GroebnerBasis:
        return buchberger(self.ideal, self.ring)

    @cached_property
    def hilbert_polynomial(self) -> HilbertPolynomial:
        return hilbert_polynomial(self.groebner)

    def hilbert_function(self, degree: int) -> int:
        return hilbert_function(self.groebner, degree)

    @property
    def root_model(self) -> "EmbeddedModel":
        """The linearly normal model providing H⁰(O_X(m)); the model itself when linearly normal."""
        return self.root if self.root is not None else self

    @cached_property
    def subspace(self) -> list[Polynomial]:
        """Basis of V as linear forms in the root's ring."""
        root = self.root_model
        if self.parent_subspace is None:
            return list(root.ring.gens)
        forms = [root.ring.parse(text) for text in self.parent_subspace]
        if not all(f and is_linear_form(f) for f in forms):
            raise BettilabValueError("the parent subspace must consist of nonzero linear forms")
        return forms

    @property
    def descriptor(self) -> str:
        root = self.root_model
        params = ", ".join(
            f"{k}={','.join(map(str, v)) if isinstance(v, list) else v}" for k, v in sorted(root.params.items())
        )
        text = f"{root.name}({params})"
        if self.metadata.t:
            text += f" projected t={self.metadata.t}"
        return text

    @property
    def seed_chain(self) -> list[int]:
        """Seeds of the randomized construction and of every projection step."""
        head = [] if self.root_model.seed is None else [self.root_model.seed]
        return head + [record.seed for record in self.chain]

    def require_curve(self) -> CurveData:
        curve = self.root_model.curve
        if curve is None:
            raise UnsupportedModelError(f"no canonical basis available for {self.descriptor}")
        return curve

    @classmethod
    def load_from(cls, file: FilePath) -> Self:
        try:
            return cls.model_validate_json(file.read_bytes())
        except FileNotFoundError:
            raise BettilabPathError(f"file not found at '{file}'") from None
        except PermissionError:
            raise BettilabPathError(f"permission denied for '{file}'") from None
        except ValidationError as e:
            raise BettilabValueError(f"invalid model file\n\n{e}") from e

    def dumps(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


EmbeddedModel.model_rebuild()


@validate_call
def load_model(file: Path) -> EmbeddedModel:
    """Read a model file.

    Raises:
        BettilabPathError: If the file cannot be read.
        BettilabValueError: If the file is not a valid model.
    """
    return EmbeddedModel.load_from(file)


@validate_call
def dump_model(model: EmbeddedModel, file: Path) -> bool:
    """Write a model file; the output is a deterministic function of the model.

    Returns:
        True if the file content changed.
    """
    return write_if_different(file, model.dumps())
