import logging
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from ..coeffs import FreeElement, Monomial, monomial_mul
from .element import (
    FactorizationError,
    StrandBasisElement,
    StrandError,
    cross,
    mirror,
    rho,
)


logger = logging.getLogger(__name__)

Factor = Tuple[FrozenSet[int], int, int]


def _check_compatible(f: StrandBasisElement, g: StrandBasisElement) -> None:
    if f.n != g.n or f.k != g.k or f.downward != g.downward:
        logger.error("Incompatible strand elements %s and %s", f, g)
        raise StrandError(f"{f} and {g} live in different algebras")


def mul_basis(f: StrandBasisElement, g: StrandBasisElement) -> Optional[StrandBasisElement]:
    """
    Concatenate: first f, then g. Zero (None) unless the idempotents meet
    and the crossings of the composite add up.
    """
    _check_compatible(f, g)
    if f.target != g.source:
        return None
    second = g.as_dict()
    product = StrandBasisElement.from_map(
        f.n, {s: second[t] for s, t in f.strands}, f.downward
    )
    if cross(product) != cross(f) + cross(g):
        return None
    return product


def diff_basis(f: StrandBasisElement) -> Set[StrandBasisElement]:
    """Smoothings of one crossing that lower the crossing number by exactly one."""
    mapping = f.as_dict()
    base = cross(f)
    out = set()
    for i, j in combinations(sorted(mapping), 2):
        if mapping[i] > mapping[j]:
            smoothed = dict(mapping)
            smoothed[i], smoothed[j] = mapping[j], mapping[i]
            g = StrandBasisElement.from_map(f.n, smoothed, f.downward)
            if cross(g) == base - 1:
                out.add(g)
    return out


def algebra_mul(e1: FreeElement, e2: FreeElement) -> FreeElement:
    n = e1.n
    terms = []
    for m1, f in e1:
        for m2, g in e2:
            product = mul_basis(f, g)
            if product is not None:
                terms.append((monomial_mul(m1, m2), product))
    return FreeElement.sum(n, terms)


def algebra_diff(e: FreeElement) -> FreeElement:
    """Linear extension of `diff_basis`; U variables are cycles."""
    return FreeElement.sum(e.n, ((m, g) for m, f in e for g in diff_basis(f)))


def as_element(f: StrandBasisElement, u_count: int, monomial: Optional[Monomial] = None) -> FreeElement:
    """A basis element as an algebra element over F2[U_1..U_u_count]."""
    return FreeElement.basis(u_count, f, monomial)


def relation_diff(n: int, s: Iterable[int], i: int, j: int) -> Set[StrandBasisElement]:
    """
    The differential of rho_{S,i,j} written through the generators:
    the sum over l in S, i < l < j, of rho_{l,j} rho_{i,l}.
    """
    s = frozenset(s)
    out = set()
    for l in sorted(s):
        if i < l < j:
            first = rho(n, s, l, j)
            second = rho(n, first.target, i, l)
            product = mul_basis(first, second)
            if product is not None:
                out ^= {product}
    return out


def _factor_upward(f: StrandBasisElement) -> List[Factor]:
    current = {s: s for s, _ in f.strands}  # strand origin -> current position
    moving = sorted((t, s) for s, t in f.strands if s != t)
    factors: List[Factor] = []
    for t, s in reversed(moving):
        positions = frozenset(current.values())
        factors.append((positions, current[s], t))
        current[s] = t
    return factors


@lru_cache(maxsize=None)
def factorize(f: StrandBasisElement) -> Tuple[Factor, ...]:
    """
    Write f as a product of single-strand moves (S', i, j), moving the
    strands in strictly decreasing order of destination.

    For a downward-veering element the moves run from i down to j.
    """
    if f.downward:
        n = f.n
        factors = [
            (frozenset(n - p for p in s), n - i, n - j) for s, i, j in _factor_upward(mirror(f))
        ]
    else:
        factors = _factor_upward(f)

    product = StrandBasisElement.from_map(f.n, {p: p for p in f.source}, f.downward)
    total = 0
    for s, i, j in factors:
        factor = _move(f.n, s, i, j, f.downward)
        total += cross(factor)
        product = mul_basis(product, factor)
        if product is None:
            break
    if product != f or total != cross(f):
        logger.error("Factorization of %s failed: %s", f, factors)
        raise FactorizationError(f"Factors {factors} do not multiply back to {f} additively")
    return tuple(factors)


def _move(n: int, s: FrozenSet[int], i: int, j: int, downward: bool) -> StrandBasisElement:
    mapping = {p: p for p in s if p != i}
    mapping[i] = j
    return StrandBasisElement.from_map(n, mapping, downward)


def factor_element(n: int, factor: Factor, downward: bool = False) -> StrandBasisElement:
    s, i, j = factor
    return _move(n, s, i, j, downward)
