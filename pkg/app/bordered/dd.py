import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Tuple

from ..coeffs import FreeElement, Monomial, monomial_mul
from ..grid import (
    Generator,
    PartialDiagram,
    SlabKind,
    generators,
    left_half_strips_from,
    rectangles_from,
)
from ..strands import (
    StrandBasisElement,
    StrandError,
    basis_by_source,
    basis_by_target,
    diff_basis,
    idempotent,
    mul_basis,
    rho,
    rho_down,
)
from .common import PairingError, act_through_factors, scaled


logger = logging.getLogger(__name__)

DDTerm = Tuple[StrandBasisElement, StrandBasisElement]


@dataclass
class DDBimodule:
    """
    The identity type DD bimodule over A_{N,k} and the downward algebra
    A'_{N,k'} with k' = N + 1 - k.

    Generators are the k-subsets S; delta(S) sums rho_{S,i,j} (x) rho'_{i,j}
    over i in S, j not in S, i < j, where rho'_{i,j} moves the strand at j
    down to i starting from the complement of S.
    """

    n: int
    k: int
    generators: List[FrozenSet[int]]
    delta: Dict[FrozenSet[int], FreeElement]
    name: str = field(default="CPDD", compare=False)

    @property
    def k_prime(self) -> int:
        return self.n + 1 - self.k

    def complement(self, s: FrozenSet[int]) -> FrozenSet[int]:
        return frozenset(range(self.n + 1)) - s

    def unit(self, s: FrozenSet[int]) -> DDTerm:
        return idempotent(self.n, s), StrandBasisElement.from_map(
            self.n, {p: p for p in self.complement(s)}, downward=True
        )

    def basis(self) -> List[DDTerm]:
        """Pairs (a, c) with a ending on S and c ending on the complement of S."""
        left = basis_by_target(self.n, self.k)
        right = basis_by_target(self.n, self.k_prime, downward=True)
        return [
            (a, c)
            for s in self.generators
            for a in left.get(s, [])
            for c in right.get(self.complement(s), [])
        ]

    def d(self, element: FreeElement) -> FreeElement:
        terms = []
        for m, (a, c) in element:
            terms.extend((m, (b, c)) for b in diff_basis(a))
            terms.extend((m, (a, b)) for b in diff_basis(c))
            for m2, (r, r2) in self.delta[a.target]:
                left = mul_basis(a, r)
                right = mul_basis(c, r2)
                if left is not None and right is not None:
                    terms.append((monomial_mul(m, m2), (left, right)))
        return FreeElement.sum(self.n, terms)

    def d_squared_failures(self) -> List[DDTerm]:
        return [t for t in self.basis() if self.d(self.d(FreeElement.basis(self.n, t)))]


def cpdd(n: int, k: int) -> DDBimodule:
    """
    The identity DD bimodule for a cut at column k.

    Args:
        n: Size of the grid.
        k: The cut, 0..n+1; the downward side lives over n + 1 - k strands.

    Returns:
        The bimodule with one generator per k-subset of 0..n.
    """
    if not 0 <= k <= n + 1:
        logger.error("cpdd called with n=%d, k=%d", n, k)
        raise StrandError(f"k must lie in 0..{n + 1}, got {k}")
    gens = [frozenset(s) for s in combinations(range(n + 1), k)]
    delta = {}
    for s in gens:
        comp = frozenset(range(n + 1)) - s
        terms = [
            (rho(n, s, i, j), rho_down(n, comp, i, j))
            for i in sorted(s)
            for j in sorted(comp)
            if i < j
        ]
        delta[s] = FreeElement.sum(n, ((Monomial.one(n), t) for t in terms))
    logger.info("Built CPDD for n=%d, k=%d: %d generators", n, k, len(gens))
    return DDBimodule(n, k, gens, delta)


@dataclass
class AbsorbingModule:
    """
    A right module over the downward algebra A'_{N,k'} built on a type D
    slab: x * I'_S = x exactly when S = Im x, and rho'_{i,j} acts by the
    admissible left-edge half-strip moving the point of x in row j down
    to row i. The differential counts rectangles.
    """

    part: PartialDiagram
    basis: List[Generator]
    diff: Dict[Generator, FreeElement]
    action: Dict[Tuple[Generator, int, int], FreeElement]
    name: str = field(default="CPA_abs", compare=False)

    @property
    def n(self) -> int:
        return self.part.n

    def right_idempotent(self, x: Generator) -> FrozenSet[int]:
        return x.image

    def act_move(self, x: Generator, high: int, low: int) -> FreeElement:
        return self.action.get((x, low, high), FreeElement.zero(self.n))

    def act(self, element: FreeElement, c: StrandBasisElement) -> FreeElement:
        if not c.downward or c.n != self.n or c.k != self.part.width:
            logger.error("Acting on %s by %s", self.name, c)
            raise PairingError(f"{c} is not an element of A'_{{{self.n},{self.part.width}}}")
        return act_through_factors(element, c, self.right_idempotent, self.act_move)

    def d(self, element: FreeElement) -> FreeElement:
        return FreeElement.sum(
            self.n, (t for m, x in element for t in scaled(m, self.diff[x]))
        )

    def associativity_failures(self) -> List[Tuple[Generator, StrandBasisElement, StrandBasisElement]]:
        """Composable pairs (c1, c2) of A' basis elements with (x c1) c2 != x (c1 c2)."""
        by_source = basis_by_source(self.n, self.part.width, downward=True)
        bad = []
        for x in self.basis:
            unit = FreeElement.basis(self.n, x)
            for c1 in by_source.get(x.image, []):
                xc = self.act(unit, c1)
                for c2 in by_source.get(c1.target, []):
                    c12 = mul_basis(c1, c2)
                    rhs = self.act(unit, c12) if c12 is not None else FreeElement.zero(self.n)
                    if self.act(xc, c2) != rhs:
                        bad.append((x, c1, c2))
        return bad


def cpa_abs(part: PartialDiagram) -> AbsorbingModule:
    """
    The absorbing module of a type D slab, acted on by the downward algebra.

    Args:
        part: The type D piece of a sliced diagram.

    Returns:
        The module; tensoring it with `cpdd` gives back `cpd(part)`.
    """
    if part.kind is not SlabKind.TYPE_D:
        logger.error("cpa_abs called on a %s slab", part.kind.value)
        raise PairingError(f"CPA_abs needs a type D slab, got {part.kind.value}")
    basis = list(generators(part))
    diff = {}
    action = {}
    for x in basis:
        diff[x] = FreeElement.sum(
            part.n, ((r.u, y) for y, r in rectangles_from(part, x) if r.admissible)
        )
        for y, (i, j), region in left_half_strips_from(part, x):
            if region.admissible:
                action[(x, i, j)] = FreeElement.basis(part.n, y, region.u)
    logger.info("Built CPA_abs for %s: %d generators, %d moves", part, len(basis), len(action))
    return AbsorbingModule(part, basis, diff, action)
