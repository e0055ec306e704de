"""Gröbner bases of homogeneous ideals, normal forms, elimination and linear substitution."""

import time
from collections.abc import Iterator, Mapping, Sequence
from functools import reduce

import humanize

from bettilab.algebra.polynomial import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    check_homogeneous,
    is_homogeneous,
    is_linear_form,
    polynomial_ring,
    ring_of,
)
from bettilab.cli.utils import Console
from bettilab.exceptions import BettilabValueError, HomogeneityError

Pair = tuple[int, int]


class GroebnerBasis:
    """Reduced Gröbner basis of a homogeneous ideal.

    The basis polynomials are monic and sorted by leading monomial, descending in the ring order. Standard monomials
    are cached per degree.
    """

    def __init__(self, ring: PolynomialRing, polys: Sequence[Polynomial], generators: Sequence[Polynomial]) -> None:
        self.ring = ring
        self.polys: tuple[Polynomial, ...] = tuple(sorted(polys, key=lambda g: ring.order_key(g.LM), reverse=True))
        self.generators = tuple(generators)
        self._standard: dict[int, list[Monomial]] = {}

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __repr__(self) -> str:
        return f"GroebnerBasis({len(self)} elements in {self.ring})"

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(g.LM for g in self.polys)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def is_groebner(self) -> bool:
        return is_groebner(self.polys)

    def is_reduced(self) -> bool:
        """No leading monomial divides any term of another basis element, and all elements are monic."""
        R = self.ring.ring
        for i, g in enumerate(self.polys):
            if g.LC != R.domain.one:
                return False
            for j, h in enumerate(self.polys):
                if i != j and any(R.monomial_div(m, g.LM) is not None for m in h.monoms()):
                    return False
        return True

    def standard_monomials(self, degree: int) -> list[Monomial]:
        return standard_monomials(self, degree)

    def lines(self) -> list[str]:
        return [self.ring.format(g) for g in self.polys]


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return the s-polynomial of monic polynomials f and g."""
    R = f.ring
    lcm = R.monomial_lcm(f.LM, g.LM)
    return f.mul_monom(R.monomial_div(lcm, f.LM)) - g.mul_monom(R.monomial_div(lcm, g.LM))


def is_groebner(polys: Sequence[Polynomial]) -> bool:
    """Check that every S-polynomial of the (nonzero) polynomials reduces to zero."""
    G = [f.monic() for f in polys if f]
    return all(not spoly(G[i], G[j]).rem(G) for i in range(len(G)) for j in range(i + 1, len(G)))


def _select(G: Sequence[Polynomial], P: set[Pair]) -> Pair:
    """Normal selection by degree of the lcm first; the ring order breaks ties."""
    R = G[0].ring

    def key(p: Pair) -> tuple[int, object, Pair]:
        lcm = R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)
        return sum(lcm), R.order(lcm), p

    return min(P, key=key)


def _update(G: list[Polynomial], P: set[Pair], f: Polynomial) -> tuple[list[Polynomial], set[Pair]]:
    """Add `f` to the basis and the pair set using the Gebauer–Möller criteria."""
    R = f.ring
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div
    lmf = f.LM
    lmG = [g.LM for g in G]

    # chain criterion on the old pairs
    P = {
        p
        for p in P
        if (
            not div(lcm(lmG[p[0]], lmG[p[1]]), lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf)
        )
    }

    lcm_dict: dict[Monomial, list[int]] = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimal_lcms: list[Monomial] = []
    for L in sorted(lcm_dict, key=R.order):
        if all(not div(L, L_) for L_ in minimal_lcms):
            minimal_lcms.append(L)

    # product criterion on the new pairs
    new_pairs = set()
    for L in minimal_lcms:
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))

    return G + [f], P | new_pairs


def _minimalize(G: Sequence[Polynomial]) -> list[Polynomial]:
    if not G:
        return []
    R = G[0].ring
    minimal: list[Polynomial] = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in minimal):
            minimal.append(f)
    return minimal


def _interreduce(G: Sequence[Polynomial]) -> list[Polynomial]:
    reduced = []
    for i, g in enumerate(G):
        others = [h for j, h in enumerate(G) if j != i]
        reduced.append((g.rem(others) if others else g).monic())
    return reduced


def buchberger(
    gens: Sequence[Polynomial], ring: PolynomialRing | None = None, order: MonomialOrder | None = None
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by homogeneous `gens`.

    Pairs are selected by the normal strategy (smallest lcm degree, then smallest lcm) and pruned with the product and
    chain criteria.

    Args:
        gens: Homogeneous generators.
        ring: The ring of the generators; inferred from them when omitted (required for an empty list).
        order: Compute with respect to this order instead of the ring's own; the basis then lives in the ring with the
            same variables and field and the requested order.

    Returns:
        The reduced Gröbner basis.

    Raises:
        HomogeneityError: If some generator is not homogeneous.
    """
    if ring is None:
        if not gens:
            raise BettilabValueError("the ring of an empty generator list must be given")
        ring = ring_of(gens[0])
    if order is not None and order != ring.order:
        target = polynomial_ring(ring.variables, ring.field, order)
        gens = [target.convert(f, ring) for f in gens]
        ring = target
    check_homogeneous(gens)

    start = time.perf_counter()
    G: list[Polynomial] = []
    P: set[Pair] = set()
    for f in gens:
        if f:
            G, P = _update(G, P, f.monic())
    while P:
        i, j = _select(G, P)
        P.remove((i, j))
        r = spoly(G[i], G[j]).rem(G)
        if r:
            G, P = _update(G, P, r.monic())

    basis = GroebnerBasis(ring, _interreduce(_minimalize(G)), gens)
    elapsed = time.perf_counter() - start
    if elapsed > 1:
        Console().log(
            f"Gröbner basis with {len(basis)} elements in {ring.nvars} variables "
            f"({humanize.precisedelta(elapsed, minimum_unit='milliseconds')})"
        )
    return basis


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of `f` modulo the basis; no term is divisible by a leading monomial of G."""
    if f.ring != G.ring.ring:
        f = G.ring.convert(f)
    if not G.polys:
        return f
    return f.rem(list(G.polys))


def standard_monomials(G: GroebnerBasis, degree: int) -> list[Monomial]:
    """Degree-d monomials outside the leading-term ideal, descending in the ring order.

    Built degree by degree: every divisor of a standard monomial is standard, so degree d is obtained by multiplying
    degree d-1 by the variables and filtering.

    Raises:
        BettilabValueError: If the degree is negative.
    """
    if degree < 0:
        raise BettilabValueError("degree must be non-negative")
    if degree in G._standard:
        return G._standard[degree]

    R = G.ring.ring
    leading = G.leading_monomials
    if degree == 0:
        result = [] if any(sum(m) == 0 for m in leading) else [(0,) * G.ring.nvars]
    else:
        candidates = set()
        for mu in standard_monomials(G, degree - 1):
            for i in range(G.ring.nvars):
                candidates.add(tuple(e + (1 if k == i else 0) for k, e in enumerate(mu)))
        result = [m for m in candidates if all(R.monomial_div(m, lm) is None for lm in leading)]
        result.sort(key=G.ring.order_key, reverse=True)

    G._standard[degree] = result
    return result


def homogenize(f: Polynomial, ring: PolynomialRing, variable: str) -> Polynomial:
    """Homogenize `f` (in a ring without `variable`) inside `ring`, which has `variable` as an extra slot."""
    source = ring_of(f)
    slot = ring.variables.index(variable)
    top = max((sum(m) for m in f.monoms()), default=0)
    lifted = ring.convert(f, source)
    terms = {}
    for m, c in lifted.terms():
        exponents = list(m)
        exponents[slot] += top - sum(m)
        terms[tuple(exponents)] = c
    return ring.from_terms(terms)


def dehomogenize(f: Polynomial, variable: str, target: PolynomialRing) -> Polynomial:
    """Set `variable` to 1 and map the result into `target`."""
    source = ring_of(f)
    slot = source.variables.index(variable)
    terms: dict[Monomial, object] = {}
    for m, c in f.terms():
        key = tuple(e for k, e in enumerate(m) if k != slot)
        terms[key] = terms.get(key, source.field.zero()) + c
    stripped = polynomial_ring(
        tuple(v for v in source.variables if v != variable), source.field, MonomialOrder()
    ).from_terms(terms)
    return target.convert(stripped)


def eliminate(gens: Sequence[Polynomial] | GroebnerBasis, keep: Sequence[str]) -> list[Polynomial]:
    """Generators of the elimination ideal I ∩ k[keep].

    Homogeneous input is handled by a block order with the eliminated variables first. Other input is homogenized
    with a fresh variable first, eliminated, and dehomogenized, which yields generators of the same elimination ideal.

    Args:
        gens: Generators (or a Gröbner basis) of the ideal.
        keep: Names of the variables to keep.

    Returns:
        Polynomials in the grevlex ring on the kept variables (in their original relative order).
    """
    if isinstance(gens, GroebnerBasis):
        ring, polys = gens.ring, list(gens.polys)
    else:
        polys = [f for f in gens if f]
        if not polys:
            return []
        ring = ring_of(polys[0])
    unknown = set(keep) - set(ring.variables)
    if unknown:
        raise BettilabValueError(f"unknown variables {sorted(unknown)}")

    kept = tuple(v for v in ring.variables if v in keep)
    dropped = tuple(v for v in ring.variables if v not in keep)
    target = polynomial_ring(kept, ring.field)
    if not dropped:
        return list(buchberger([target.convert(f, ring) for f in polys], target).polys)

    if all(is_homogeneous(f) for f in polys):
        work = polynomial_ring((*dropped, *kept), ring.field, MonomialOrder.elimination(len(dropped)))
        G = buchberger([work.convert(f, ring) for f in polys], work)
        return [target.convert(g, work) for g in G.polys if not any(g.degree(i) > 0 for i in range(len(dropped)))]

    h = _fresh_variable(ring.variables)
    work = polynomial_ring((*dropped, *kept, h), ring.field, MonomialOrder.elimination(len(dropped)))
    G = buchberger([homogenize(f, work, h) for f in polys], work)
    result: list[Polynomial] = []
    for g in G.polys:
        if any(g.degree(i) > 0 for i in range(len(dropped))):
            continue
        affine = dehomogenize(g, h, target)
        if affine and affine not in result:
            result.append(affine)
    return result


def _fresh_variable(variables: Sequence[str]) -> str:
    name = "h"
    while name in variables:
        name += "_"
    return name


def substitute_linear(
    gens: Sequence[Polynomial], mapping: Mapping[str, Polynomial], target: PolynomialRing
) -> list[Polynomial]:
    """Substitute homogeneous linear forms of `target` for the variables of the generators.

    Variables without an entry in `mapping` are sent to the variable of `target` with the same name.

    Args:
        gens: Polynomials in some ring.
        mapping: Variable name -> linear form in `target`.
        target: The ring receiving the substituted polynomials.

    Returns:
        The nonzero substituted generators.

    Raises:
        HomogeneityError: If some image is not a linear form.
        BettilabValueError: If a variable has neither an image nor a namesake in `target`.
    """
    for name, image in mapping.items():
        if image.ring != target.ring:
            image = target.convert(image)
        if image and not is_linear_form(image):
            raise HomogeneityError(f"image {target.format(image)!r} of {name} is not a linear form")

    result = []
    for f in gens:
        source = ring_of(f)
        images = []
        for name in source.variables:
            if name in mapping:
                image = mapping[name]
                images.append(image if image.ring == target.ring else target.convert(image))
            elif name in target.variables:
                images.append(target.gens[target.variables.index(name)])
            else:
                images.append(None)

        powers: dict[tuple[int, int], Polynomial] = {}
        total = target.zero
        for monomial, coefficient in f.terms():
            factors = []
            for slot, e in enumerate(monomial):
                if not e:
                    continue
                if images[slot] is None:
                    raise BettilabValueError(f"variable {source.variables[slot]} has no image in {target}")
                if (slot, e) not in powers:
                    powers[(slot, e)] = images[slot] ** e
                factors.append(powers[(slot, e)])
            value = coefficient if source.field == target.field else target.field.convert(coefficient)
            total += reduce(lambda a, b: a * b, factors, target.one) * value
        if total:
            result.append(total)
    return result


def saturate_by_variable(gens: Sequence[Polynomial], variable: str) -> list[Polynomial]:
    """Generators of the saturation I : x^∞ of a homogeneous ideal.

    Computes a grevlex basis with `variable` as the smallest variable and divides every element by the largest power
    of `variable` dividing it.
    """
    ring = ring_of(gens[0])
    others = tuple(v for v in ring.variables if v != variable)
    work = polynomial_ring((*others, variable), ring.field)
    G = buchberger([work.convert(f, ring) for f in gens], work)
    slot = work.nvars - 1
    result = []
    for g in G.polys:
        power = min(m[slot] for m in g.monoms())
        divided = work.from_terms(
            {tuple(e - power if k == slot else e for k, e in enumerate(m)): c for m, c in g.terms()}
        )
        result.append(ring.convert(divided, work))
    return result
