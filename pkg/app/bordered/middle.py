import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Tuple

from ..coeffs import FreeElement
from ..complexes import Bigrading, partial_gradings
from ..grid import (
    Generator,
    PartialDiagram,
    SlabKind,
    generators,
    half_strip_right_edge,
    left_half_strips_from,
    rectangles_from,
    strip,
)
from ..strands import (
    InterfaceGradingData,
    StrandBasisElement,
    basis_by_source,
    diff_basis,
    gradings_alg,
    idempotent,
    mul_basis,
    rho,
)
from .common import (
    PairingError,
    act_through_factors,
    differentiate_coefficients,
    left_multiply,
    middle_grading_data,
    scaled,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class MiddleGenerator:
    """A generator x of a middle slab paired with a left idempotent disjoint from Im x."""

    idem: Tuple[int, ...]
    x: Generator

    @property
    def left(self) -> FrozenSet[int]:
        return frozenset(self.idem)

    @property
    def right(self) -> FrozenSet[int]:
        return frozenset(self.idem) | self.x.image

    def __str__(self) -> str:
        return "{" + ",".join(str(r) for r in self.idem) + "}" + str(self.x)


DATerm = Tuple[StrandBasisElement, MiddleGenerator]
ActionKey = Tuple[MiddleGenerator, int, int]


def middle_generator(idem, x: Generator) -> MiddleGenerator:
    """Pair a slab generator with a left idempotent."""
    return MiddleGenerator(tuple(sorted(idem)), x)


@dataclass
class MiddleModule:
    """
    A DA bimodule: left type D over A_{N,k}, right A-module over A_{N,l}.

    `delta` holds delta^1_1 and `action` the nonzero values of delta^1_2
    on single-strand moves; both take values in sums of a (x) g with a in
    A_{N,k}.
    """

    part: PartialDiagram
    generators: List[MiddleGenerator]
    delta: Dict[MiddleGenerator, FreeElement]
    action: Dict[ActionKey, FreeElement]
    name: str = field(default="CPDA", compare=False)

    @property
    def n(self) -> int:
        return self.part.n

    @property
    def k(self) -> int:
        return self.part.col_lo

    @property
    def l(self) -> int:
        return self.part.col_hi

    def unit(self, g: MiddleGenerator) -> FreeElement:
        return FreeElement.basis(self.n, (idempotent(self.n, g.left), g))

    def d(self, element: FreeElement) -> FreeElement:
        """d(a, g) = (da, g) + a * delta(g)."""
        out = differentiate_coefficients(element)
        for m, (a, g) in element:
            out = out + FreeElement.sum(self.n, scaled(m, left_multiply(a, self.delta[g])))
        return out

    def act_rho(self, g: MiddleGenerator, i: int, j: int) -> FreeElement:
        return self.action.get((g, i, j), FreeElement.zero(self.n))

    def _act_move(self, tag: DATerm, i: int, j: int) -> FreeElement:
        a, g = tag
        return left_multiply(a, self.act_rho(g, i, j))

    def act(self, element: FreeElement, f: StrandBasisElement) -> FreeElement:
        """(a (x) g) * f, moving through the factors of f."""
        if f.downward or f.n != self.n or f.k != self.l:
            logger.error("Acting on %s by %s", self.name, f)
            raise PairingError(f"{f} is not an element of A_{{{self.n},{self.l}}}")
        return act_through_factors(element, f, lambda tag: tag[1].right, self._act_move)

    def grading_data(self) -> Tuple[InterfaceGradingData, InterfaceGradingData]:
        return middle_grading_data(self.part)

    def grading(self, g: MiddleGenerator) -> Bigrading:
        return partial_gradings(self.part, g.x, g.left)

    def term_grading(self, m, a: StrandBasisElement, g: MiddleGenerator) -> Bigrading:
        left, _ = self.grading_data()
        ga, gmu = gradings_alg(a, left, m)
        xa, xmu = self.grading(g)
        return ga + xa, gmu + xmu

    def d_squared_failures(self) -> List[MiddleGenerator]:
        return [g for g in self.generators if self.d(self.d(self.unit(g)))]

    def leibniz_failures(self) -> List[ActionKey]:
        """
        Moves where d(g * rho) != d(g) * rho + g * d(rho), the bimodule
        relation with no higher actions.
        """
        bad = []
        for g in self.generators:
            for i in sorted(g.right):
                for j in range(i + 1, self.n + 1):
                    if j in g.right:
                        continue
                    lhs = self.d(self._act_move((idempotent(self.n, g.left), g), i, j))
                    rhs = FreeElement.zero(self.n)
                    for m, (a, g2) in self.delta[g]:
                        rhs = rhs + FreeElement.sum(
                            self.n, scaled(m, left_multiply(a, self.act_rho(g2, i, j)))
                        )
                    for b in diff_basis(rho(self.n, g.right, i, j)):
                        rhs = rhs + self.act(self.unit(g), b)
                    if lhs != rhs:
                        bad.append((g, i, j))
        return bad

    def associativity_failures(self) -> List[Tuple[MiddleGenerator, StrandBasisElement, StrandBasisElement]]:
        """Composable pairs (a, b) in A_{N,l} with (g a) b != g (a b)."""
        by_source = basis_by_source(self.n, self.l)
        bad = []
        for g in self.generators:
            unit = self.unit(g)
            for a in by_source.get(g.right, []):
                ga = self.act(unit, a)
                for b in by_source.get(a.target, []):
                    ab = mul_basis(a, b)
                    rhs = self.act(unit, ab) if ab is not None else FreeElement.zero(self.n)
                    if self.act(ga, b) != rhs:
                        bad.append((g, a, b))
        return bad

    def grading_failures(self) -> List[Tuple[MiddleGenerator, DATerm]]:
        _, right = self.grading_data()
        bad = []
        for g in self.generators:
            a, mu = self.grading(g)
            for m, (b, g2) in self.delta[g]:
                if self.term_grading(m, b, g2) != (a, mu - 1):
                    bad.append((g, (b, g2)))
        for (g, i, j), result in self.action.items():
            a, mu = self.grading(g)
            ra, rmu = gradings_alg(rho(self.n, g.right, i, j), right)
            for m, (b, g2) in result:
                if self.term_grading(m, b, g2) != (a + ra, mu + rmu):
                    bad.append((g, (b, g2)))
        return bad


def _middle_generators(part: PartialDiagram) -> List[MiddleGenerator]:
    gens = []
    for x in generators(part):
        free = sorted(set(part.rows) - x.image)
        gens.extend(middle_generator(s, x) for s in combinations(free, part.col_lo))
    return sorted(gens)


def cpda(part: PartialDiagram) -> MiddleModule:
    """
    The DA bimodule of a middle slab.

    delta counts admissible rectangles (coefficient I_S) and left-edge
    half-strips whose chord starts in S (coefficient rho_{S,i,j}). The
    right action of rho_{T,i,j}, T = S u Im x, counts the right-edge
    half-strip when row i is occupied by x and the full strip between
    rows i and j when i lies in S.

    Args:
        part: A middle piece of a diagram sliced at two or more cuts.

    Returns:
        The bimodule with its delta and right-action tables.

    Raises:
        PairingError: If `part` is not a middle slab.
    """
    if part.kind is not SlabKind.MIDDLE:
        logger.error("cpda called on a %s slab", part.kind.value)
        raise PairingError(f"CPDA needs a middle slab, got {part.kind.value}")
    n = part.n
    gens = _middle_generators(part)
    delta = {}
    action = {}
    for g in gens:
        s, x = g.left, g.x
        unit = idempotent(n, s)
        terms = [(r.u, (unit, middle_generator(s, y))) for y, r in rectangles_from(part, x) if r.admissible]
        for y, (i, j), region in left_half_strips_from(part, x):
            if region.admissible and i in s and j not in s:
                moved = (s - {i}) | {j}
                if not moved & y.image:
                    terms.append((region.u, (rho(n, s, i, j), middle_generator(moved, y))))
        delta[g] = FreeElement.sum(n, terms)

        right = g.right
        for i in sorted(right):
            for j in range(i + 1, n + 1):
                if j in right:
                    continue
                result = _action_term(part, g, i, j, unit)
                if result:
                    action[(g, i, j)] = result
    logger.info("Built CPDA for %s: %d generators, %d moves", part, len(gens), len(action))
    return MiddleModule(part, gens, delta, action)


def _action_term(
    part: PartialDiagram, g: MiddleGenerator, i: int, j: int, unit: StrandBasisElement
) -> FreeElement:
    n = part.n
    s, x = g.left, g.x
    if i in x.image:
        column = next(c for c in x.columns if x.row(c) == i)
        y = x.replace(column, j)
        _, region = half_strip_right_edge(part, x, y)
        if region.admissible:
            return FreeElement.basis(n, (unit, middle_generator(s, y)), region.u)
        return FreeElement.zero(n)
    region = strip(part, (i, j), x)
    if region is not None and not region.has_x:
        moved = (s - {i}) | {j}
        return FreeElement.basis(n, (rho(n, s, i, j), middle_generator(moved, x)), region.u)
    return FreeElement.zero(n)
