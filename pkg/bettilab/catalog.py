"""Constructors of the embedded varieties in the catalog, their invariants and general curve sections."""

from collections.abc import Callable, Sequence
from functools import cache
from itertools import combinations
from pathlib import Path
from typing import Any

from pydantic import TypeAdapter, ValidationError

from bettilab.algebra.groebner import buchberger, substitute_linear
from bettilab.algebra.hilbert import hilbert_polynomial
from bettilab.algebra.polynomial import Polynomial, polynomial_ring, variable_names
from bettilab.cli.utils import Console
from bettilab.curves import FunctionField, curve_generators, embedding_monomials, random_curve
from bettilab.enums import CaseTag
from bettilab.exceptions import BettilabValueError, GuardError, IntegrityError
from bettilab.models.base import BettilabFrozenModel
from bettilab.models.model import CurveData, EmbeddedModel, ModelMetadata
from bettilab.types import TypeDimension
from bettilab.utils import YAML, derive_seed, random_integers

CATALOG_FILE = Path(__file__).parent / "data" / "catalog.yaml"
MAX_AMBIENT = 9
DEFAULT_BOUND = 50
DEFAULT_RESEEDS = 5


class Invariants(BettilabFrozenModel):
    """The numerical invariants (n, d, e, g) of an embedded variety."""

    n: TypeDimension
    d: int
    e: TypeDimension
    g: int

    def __str__(self) -> str:
        return f"(n, d, e, g) = ({self.n}, {self.d}, {self.e}, {self.g})"


class CatalogEntry(BettilabFrozenModel):
    """One named instance of a catalog family.

    Attributes:
        name: Name of the instance.
        constructor: Constructor name, e.g. `elliptic-normal-curve`.
        params: Constructor parameters.
        expected: Invariants the built model must have.
        case: Classification case of the family.
        description: Human readable description.
    """

    name: str
    constructor: str
    params: dict[str, int | list[int]]
    expected: Invariants
    case: CaseTag
    description: str = ""


@cache
def catalog_entries() -> tuple[CatalogEntry, ...]:
    """Load the catalog shipped with the package.

    Raises:
        BettilabValueError: If the catalog file is invalid.
    """
    data = YAML.load(CATALOG_FILE.read_text(encoding="utf-8"))
    try:
        entries = TypeAdapter(list[CatalogEntry]).validate_python(data, strict=False)
    except ValidationError as e:
        raise BettilabValueError(f"invalid catalog\n\n{e}") from e
    unknown = {entry.constructor for entry in entries} - set(CONSTRUCTORS)
    if unknown:
        raise BettilabValueError(f"unknown constructors in catalog: {sorted(unknown)}")
    return tuple(entries)


def catalog_entry(name: str) -> CatalogEntry:
    for entry in catalog_entries():
        if entry.name == name:
            return entry
    raise BettilabValueError(f"no catalog entry named {name!r}")


def _positive(d: int, g: int) -> bool:
    return d >= 2 * g + 3


def _distinct_up_to_scalar(polys: Sequence[Polynomial]) -> list[Polynomial]:
    seen: set[Polynomial] = set()
    result = []
    for f in polys:
        if f and (key := f.monic()) not in seen:
            seen.add(key)
            result.append(f)
    return result


def _two_by_two_minors(top: Sequence[Polynomial], bottom: Sequence[Polynomial]) -> list[Polynomial]:
    minors = [top[i] * bottom[j] - top[j] * bottom[i] for i, j in combinations(range(len(top)), 2)]
    return _distinct_up_to_scalar(minors)


def _build(
    name: str,
    params: dict[str, int | list[int]],
    variables: tuple[str, ...],
    generators: Sequence[Polynomial],
    metadata: ModelMetadata,
    seed: int | None = None,
    curve: CurveData | None = None,
) -> EmbeddedModel:
    ring = polynomial_ring(variables)
    return EmbeddedModel(
        name=name,
        params=params,
        ambient=len(variables) - 1,
        variables=list(variables),
        generators=(
            buchberger(list(generators), ring).lines() if curve is not None else [ring.format(f) for f in generators]
        ),
        metadata=metadata,
        seed=seed,
        curve=curve,
    )


def rational_normal_curve(a: int) -> EmbeddedModel:
    """Rational normal curve of degree a in P^a: 2×2 minors of the 2×a catalecticant matrix.

    Raises:
        BettilabValueError: If a < 2 or P^a is beyond the desk-scale cap.
    """
    if not 2 <= a <= MAX_AMBIENT:
        raise BettilabValueError(f"degree must be between 2 and {MAX_AMBIENT}, got {a}")
    variables = variable_names("x", a + 1)
    x = polynomial_ring(variables).gens
    metadata = ModelMetadata(n=1, d=a, e=a - 1, g=0, gonality=1, positive=_positive(a, 0))
    return _build("rational-normal-curve", {"a": a}, variables, _two_by_two_minors(x[:-1], x[1:]), metadata)


def scroll(a: Sequence[int]) -> EmbeddedModel:
    """Rational normal scroll S(a_1, ..., a_k): 2×2 minors of the juxtaposed catalecticant blocks.

    Raises:
        BettilabValueError: If some a_i < 1, k < 2 or the ambient space exceeds P^9.
    """
    a = list(a)
    if len(a) < 2 or any(ai < 1 for ai in a):
        raise BettilabValueError(f"a scroll needs at least two positive degrees, got {a}")
    r = sum(a) + len(a) - 1
    if r > MAX_AMBIENT:
        raise BettilabValueError(f"S({','.join(map(str, a))}) lives in P^{r}, beyond P^{MAX_AMBIENT}")

    variables = variable_names("x", r + 1)
    x = polynomial_ring(variables).gens
    top: list[Polynomial] = []
    bottom: list[Polynomial] = []
    start = 0
    for ai in a:
        top.extend(x[start : start + ai])
        bottom.extend(x[start + 1 : start + ai + 1])
        start += ai + 1
    d = sum(a)
    metadata = ModelMetadata(n=len(a), d=d, e=d - 1, g=0, gonality=1, positive=_positive(d, 0))
    return _build("scroll", {"a": a}, variables, _two_by_two_minors(top, bottom), metadata)


def veronese_surface() -> EmbeddedModel:
    """Second Veronese surface in P^5: 2×2 minors of the symmetric 3×3 catalecticant."""
    variables = variable_names("x", 6)
    x = polynomial_ring(variables).gens
    matrix = [[x[0], x[1], x[2]], [x[1], x[3], x[4]], [x[2], x[4], x[5]]]
    minors = []
    for i, k in combinations(range(3), 2):
        for j, m in combinations(range(3), 2):
            minors.append(matrix[i][j] * matrix[k][m] - matrix[i][m] * matrix[k][j])
    metadata = ModelMetadata(n=2, d=4, e=3, g=0, gonality=1, positive=_positive(4, 0))
    return _build("veronese-surface", {}, variables, _distinct_up_to_scalar(minors), metadata)


def quadric_hypersurface(n: int) -> EmbeddedModel:
    """Smooth quadric x_0² + ... + x_{n+1}² in P^{n+1}.

    Raises:
        BettilabValueError: If n is outside 1..7.
    """
    if not 1 <= n <= 7:
        raise BettilabValueError(f"dimension must be between 1 and 7, got {n}")
    variables = variable_names("x", n + 2)
    x = polynomial_ring(variables).gens
    metadata = ModelMetadata(n=n, d=2, e=1, g=0, gonality=1, positive=_positive(2, 0))
    return _build("quadric-hypersurface", {"n": n}, variables, [sum((xi**2 for xi in x), x[0] * 0)], metadata)


def projective_space(r: int) -> EmbeddedModel:
    """P^r itself, given by the zero ideal."""
    if not 1 <= r <= MAX_AMBIENT:
        raise BettilabValueError(f"dimension must be between 1 and {MAX_AMBIENT}, got {r}")
    metadata = ModelMetadata(n=r, d=1, e=0, g=0, gonality=1, positive=False)
    return _build("projective-space", {"r": r}, variable_names("x", r + 1), [], metadata)


def _function_field_curve(
    name: str, params: dict[str, int | list[int]], genus: int, d: int, seed: int, bound: int, max_reseeds: int
) -> EmbeddedModel:
    r = d - genus
    variables = variable_names("x", r + 1)
    tried = []
    for attempt in range(max_reseeds + 1):
        attempt_seed = seed if attempt == 0 else derive_seed(seed, attempt)
        tried.append(attempt_seed)
        curve = random_curve(genus, d, attempt_seed, bound)
        generators = curve_generators(curve, variables)
        metadata = ModelMetadata(n=1, d=d, e=r - 1, g=genus, gonality=2, positive=_positive(d, genus))
        model = _build(name, params, variables, generators, metadata, seed=attempt_seed, curve=curve)
        hp = model.hilbert_polynomial
        if hp.dimension == 1 and hp.degree == d and hp.genus == genus:
            check_parametrization(model)
            return model
        Console().log(f"[yellow]{name}: Hilbert polynomial {hp} for seed {attempt_seed}, reseeding")
    raise GuardError(f"{name}(d={d})", tried)


def elliptic_normal_curve(
    d: int, seed: int = 0, bound: int = DEFAULT_BOUND, max_reseeds: int = DEFAULT_RESEEDS
) -> EmbeddedModel:
    """Elliptic normal curve of degree d in P^{d-1}, from a seeded Weierstrass cubic y² = x³ + ax + b.

    Raises:
        BettilabValueError: If d is outside 4..7.
        GuardError: If no seed gives the expected Hilbert polynomial.
    """
    if not 4 <= d <= 7:
        raise BettilabValueError(f"degree must be between 4 and 7, got {d}")
    return _function_field_curve("elliptic-normal-curve", {"d": d}, 1, d, seed, bound, max_reseeds)


def hyperelliptic_curve(
    g: int, d: int, seed: int = 0, bound: int = DEFAULT_BOUND, max_reseeds: int = DEFAULT_RESEEDS
) -> EmbeddedModel:
    """Genus 2 curve y² = f(x), deg f = 5, embedded by |d·P∞| in P^{d-2}.

    The odd-degree model has a single point P∞ at infinity, a Weierstrass point, so d·P∞ is a divisor of degree d
    defined over Q and the embedding needs no choice of points. The even-degree model y² = f(x), deg f = 6, with
    two points at infinity is not built.

    Raises:
        BettilabValueError: If g ≠ 2 or d is outside 2g+3..8.
        GuardError: If no seed gives the expected Hilbert polynomial.
    """
    if g != 2:
        raise BettilabValueError(f"only genus 2 is supported, got {g}")
    if not 2 * g + 3 <= d <= 8:
        raise BettilabValueError(f"degree must be between {2 * g + 3} and 8, got {d}")
    return _function_field_curve("hyperelliptic-curve", {"g": g, "d": d}, g, d, seed, bound, max_reseeds)


def check_parametrization(model: EmbeddedModel) -> None:
    """Check that every generator vanishes identically on the function field embedding.

    Raises:
        IntegrityError: If some generator does not vanish.
    """
    curve = model.require_curve()
    field = FunctionField(curve)
    images = [field.element(m) for m in embedding_monomials(curve)]
    for f in model.ideal:
        value = field.ring.zero
        for monomial, coefficient in f.terms():
            term = field.ring.one * coefficient
            for image, e in zip(images, monomial, strict=True):
                if e:
                    term = field.reduce(term * image**e)
            value += term
        if field.reduce(value):
            raise IntegrityError(f"generator {model.ring.format(f)!r} does not vanish on the curve")


CONSTRUCTORS: dict[str, Callable[..., EmbeddedModel]] = {
    "rational-normal-curve": rational_normal_curve,
    "scroll": scroll,
    "veronese-surface": veronese_surface,
    "quadric-hypersurface": quadric_hypersurface,
    "projective-space": projective_space,
    "elliptic-normal-curve": elliptic_normal_curve,
    "hyperelliptic-curve": hyperelliptic_curve,
}

RANDOMIZED = {"elliptic-normal-curve", "hyperelliptic-curve"}


def build(
    constructor: str,
    params: dict[str, Any],
    seed: int = 0,
    bound: int = DEFAULT_BOUND,
    max_reseeds: int = DEFAULT_RESEEDS,
) -> EmbeddedModel:
    """Build a model by constructor name and check its invariants.

    Raises:
        BettilabValueError: If the constructor is unknown or the parameters do not fit it.
        IntegrityError: If the computed invariants contradict the metadata.
    """
    if constructor not in CONSTRUCTORS:
        raise BettilabValueError(f"unknown constructor {constructor!r}, choose from {', '.join(CONSTRUCTORS)}")
    kwargs = dict(params)
    if constructor in RANDOMIZED:
        kwargs |= {"seed": seed, "bound": bound, "max_reseeds": max_reseeds}
    try:
        model = CONSTRUCTORS[constructor](**kwargs)
    except TypeError as e:
        raise BettilabValueError(f"invalid parameters for {constructor}: {e}") from None
    check_invariants(model, seed=seed, bound=bound, max_reseeds=max_reseeds)
    return model


def build_entry(entry: CatalogEntry, seed: int = 0, bound: int = DEFAULT_BOUND) -> EmbeddedModel:
    """Build a catalog entry and compare its invariants with the expected ones.

    Raises:
        IntegrityError: If the built model does not have the expected invariants.
    """
    model = build(entry.constructor, dict(entry.params), seed=seed, bound=bound)
    meta = model.metadata
    if Invariants(n=meta.n, d=meta.d, e=meta.e, g=meta.g) != entry.expected:
        raise IntegrityError(f"catalog entry {entry.name}: expected {entry.expected}, built {meta}")
    return model


def curve_section(
    model: EmbeddedModel, seed: int = 0, bound: int = DEFAULT_BOUND, max_reseeds: int = DEFAULT_RESEEDS
) -> EmbeddedModel:
    """General curve section: n - 1 seeded random hyperplanes x_r = Σ c_i·x_i, one variable at a time.

    Raises:
        BettilabValueError: If the model is a curve already.
        GuardError: If no seed gives a curve of the model's degree and sectional genus.
    """
    meta = model.metadata
    if meta.n < 2:
        raise BettilabValueError("curve sections need a model of dimension at least 2")

    tried = []
    for attempt in range(max_reseeds + 1):
        attempt_seed = seed if attempt == 0 else derive_seed(seed, attempt)
        tried.append(attempt_seed)
        generators = list(model.ideal)
        variables = tuple(model.variables)
        for step in range(meta.n - 1):
            target = polynomial_ring(variables[:-1])
            coefficients = random_integers(derive_seed(attempt_seed, step), len(variables) - 1, bound)
            image = target.linear_form(coefficients)
            generators = substitute_linear(generators, {variables[-1]: image}, target)
            variables = variables[:-1]

        ring = polynomial_ring(variables)
        G = buchberger(generators, ring)
        hp = hilbert_polynomial(G)
        if hp.dimension == 1 and hp.degree == meta.d and hp.genus == meta.g:
            return EmbeddedModel(
                name=f"{model.name}-section",
                params=model.params,
                ambient=len(variables) - 1,
                variables=list(variables),
                generators=G.lines(),
                metadata=ModelMetadata(
                    n=1, d=meta.d, e=meta.e, g=meta.g, gonality=meta.gonality, positive=_positive(meta.d, meta.g)
                ),
                seed=attempt_seed,
            )
        Console().log(f"[yellow]curve section of {model.descriptor}: Hilbert polynomial {hp}, reseeding")
    raise GuardError(f"curve section of {model.descriptor}", tried)


def invariants(
    model: EmbeddedModel, seed: int = 0, bound: int = DEFAULT_BOUND, max_reseeds: int = DEFAULT_RESEEDS
) -> Invariants:
    """Recompute (n, d, e, g) from Hilbert polynomials; the genus comes from a general curve section."""
    hp = model.hilbert_polynomial
    n = hp.dimension
    if n >= 2:
        section = curve_section(model, seed=seed, bound=bound, max_reseeds=max_reseeds)
        g = section.hilbert_polynomial.genus
    else:
        g = hp.genus
    return Invariants(n=n, d=hp.degree, e=model.ambient - n, g=g)


def check_invariants(
    model: EmbeddedModel, seed: int = 0, bound: int = DEFAULT_BOUND, max_reseeds: int = DEFAULT_RESEEDS
) -> Invariants:
    """Compare recomputed invariants with the model's metadata.

    Raises:
        IntegrityError: If they differ.
    """
    computed = invariants(model, seed=seed, bound=bound, max_reseeds=max_reseeds)
    meta = model.metadata
    stored = Invariants(n=meta.n, d=meta.d, e=meta.e, g=meta.g)
    if computed != stored:
        raise IntegrityError(f"{model.descriptor}: metadata {stored} but computed {computed}")
    if meta.linearly_normal and model.hilbert_function(1) != model.ambient + 1:
        raise IntegrityError(f"{model.descriptor} is degenerate: h(1) = {model.hilbert_function(1)}")
    return computed
