import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..coeffs import FreeElement, monomial_mul
from ..complexes import Bigrading, partial_gradings
from ..grid import (
    Generator,
    PartialDiagram,
    SlabKind,
    generators,
    rectangles_from,
    right_half_strips_from,
)
from ..strands import (
    InterfaceGradingData,
    StrandBasisElement,
    basis_by_source,
    diff_basis,
    gradings_alg,
    mul_basis,
    rho,
)
from .common import PairingError, act_through_factors, scaled, type_a_grading_data


logger = logging.getLogger(__name__)

ActionKey = Tuple[Generator, int, int]


@dataclass
class TypeAModule:
    """
    A right module over A_{N,k}, stored as tables: the differential on
    generators and the action of every single-strand move rho_{i,j} whose
    result is nonzero. The action of any other basis element is computed
    from these through its factorization.
    """

    part: PartialDiagram
    basis: List[Generator]
    diff: Dict[Generator, FreeElement]
    action: Dict[ActionKey, FreeElement]
    name: str = field(default="CPA", compare=False)

    @property
    def n(self) -> int:
        return self.part.n

    @property
    def k(self) -> int:
        return self.part.col_hi

    def right_idempotent(self, x: Generator) -> frozenset:
        return x.image

    def d(self, element: FreeElement) -> FreeElement:
        return FreeElement.sum(
            self.n,
            ((monomial_mul(m, m2), y) for m, x in element for m2, y in self.diff[x]),
        )

    def act_rho(self, x: Generator, i: int, j: int) -> FreeElement:
        """x * rho_{Im x, i, j}; zero when the move is not defined or not admissible."""
        return self.action.get((x, i, j), FreeElement.zero(self.n))

    def act(self, element: FreeElement, f: StrandBasisElement) -> FreeElement:
        if f.downward or f.n != self.n or f.k != self.k:
            logger.error("Acting on %s by %s", self.name, f)
            raise PairingError(f"{f} is not an element of A_{{{self.n},{self.k}}}")
        return act_through_factors(element, f, self.right_idempotent, self.act_rho)

    def act_basis(self, x: Generator, f: StrandBasisElement) -> FreeElement:
        return self.act(FreeElement.basis(self.n, x), f)

    @property
    def grading_data(self) -> InterfaceGradingData:
        return type_a_grading_data(self.part)

    def grading(self, x: Generator) -> Bigrading:
        return partial_gradings(self.part, x)

    def d_squared_failures(self) -> List[Generator]:
        return [x for x in self.basis if self.d(self.diff[x])]

    def leibniz_failures(self) -> List[ActionKey]:
        """Moves where d(x * rho) != d(x) * rho + x * d(rho)."""
        bad = []
        for x in self.basis:
            for i in sorted(x.image):
                for j in range(i + 1, self.n + 1):
                    if j in x.image:
                        continue
                    move = rho(self.n, x.image, i, j)
                    lhs = self.d(self.act_rho(x, i, j))
                    rhs = FreeElement.sum(
                        self.n,
                        (t for m, y in self.diff[x] for t in scaled(m, self.act_rho(y, i, j))),
                    )
                    for b in diff_basis(move):
                        rhs = rhs + self.act_basis(x, b)
                    if lhs != rhs:
                        bad.append((x, i, j))
        return bad

    def associativity_failures(self) -> List[Tuple[Generator, StrandBasisElement, StrandBasisElement]]:
        """Composable basis pairs (a, b) with (x a) b != x (a b)."""
        by_source = basis_by_source(self.n, self.k)
        bad = []
        for x in self.basis:
            for a in by_source.get(x.image, []):
                xa = self.act_basis(x, a)
                for b in by_source.get(a.target, []):
                    ab = mul_basis(a, b)
                    lhs = self.act(xa, b)
                    rhs = self.act_basis(x, ab) if ab is not None else FreeElement.zero(self.n)
                    if lhs != rhs:
                        bad.append((x, a, b))
        return bad

    def grading_failures(self) -> List[Tuple[Generator, Generator]]:
        """Differential and action terms that break the (A, mu) bookkeeping."""
        gd = self.grading_data
        bad = []
        for x in self.basis:
            a, mu = self.grading(x)
            for m, y in self.diff[x]:
                if _shift(self.grading(y), m.grading) != (a, mu - 1):
                    bad.append((x, y))
        for (x, i, j), result in self.action.items():
            a, mu = self.grading(x)
            ra, rmu = gradings_alg(rho(self.n, x.image, i, j), gd)
            for m, y in result:
                if _shift(self.grading(y), m.grading) != (a + ra, mu + rmu):
                    bad.append((x, y))
        return bad

    def differences(self, other: "TypeAModule") -> List[str]:
        out = []
        if self.part != other.part:
            out.append(f"slabs differ: {self.part} vs {other.part}")
        if sorted(self.basis) != sorted(other.basis):
            out.append("generators differ")
            return out
        for x in sorted(self.basis):
            if self.diff[x] != other.diff[x]:
                out.append(f"d{x}: {self.diff[x]} vs {other.diff[x]}")
        for key in sorted(set(self.action) | set(other.action)):
            mine, theirs = self.action.get(key), other.action.get(key)
            if mine != theirs:
                x, i, j = key
                out.append(f"{x}*rho({i},{j}): {mine or 0} vs {theirs or 0}")
        return out


def _shift(grading: Bigrading, delta: Bigrading) -> Bigrading:
    return grading[0] + delta[0], grading[1] + delta[1]


def cpa(part: PartialDiagram) -> TypeAModule:
    """
    The type A module of a left slab: d counts admissible rectangles and
    x * rho_{i,j} counts the admissible half-strip with its right edge on
    the interface carrying the point of x from row i up to row j.

    Args:
        part: The type A piece of a sliced diagram.

    Returns:
        The module with its differential and action tables.

    Raises:
        PairingError: If `part` is not a type A slab.
    """
    if part.kind is not SlabKind.TYPE_A:
        logger.error("cpa called on a %s slab", part.kind.value)
        raise PairingError(f"CPA needs a type A slab, got {part.kind.value}")
    basis = list(generators(part))
    diff = {}
    action = {}
    for x in basis:
        diff[x] = FreeElement.sum(
            part.n, ((r.u, y) for y, r in rectangles_from(part, x) if r.admissible)
        )
        for y, (i, j), region in right_half_strips_from(part, x):
            if region.admissible:
                action[(x, i, j)] = FreeElement.basis(part.n, y, region.u)
    logger.info("Built CPA for %s: %d generators, %d moves", part, len(basis), len(action))
    return TypeAModule(part, basis, diff, action)


def cpa_act_rho(module: TypeAModule, x: Generator, i: int, j: int) -> FreeElement:
    return module.act_rho(x, i, j)


def cpa_act_basis(module: TypeAModule, x: Generator, f: StrandBasisElement) -> FreeElement:
    return module.act_basis(x, f)
