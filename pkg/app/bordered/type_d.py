import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple

from ..coeffs import FreeElement, monomial_mul
from ..complexes import Bigrading, partial_gradings
from ..grid import (
    Generator,
    PartialDiagram,
    SlabKind,
    generators,
    left_half_strips_from,
    rectangles_from,
)
from ..strands import (
    InterfaceGradingData,
    StrandBasisElement,
    basis_by_target,
    diff_basis,
    gradings_alg,
    idempotent,
    mul_basis,
    rho,
)
from .common import PairingError, differentiate_coefficients, left_multiply, type_d_grading_data


logger = logging.getLogger(__name__)

DTerm = Tuple[StrandBasisElement, Generator]


@dataclass
class TypeDModule:
    """
    A type D structure over A_{N,k}: delta(y) is a sum of a (x) y' with
    a in A_{N,k}. The generator y carries the idempotent of the rows it
    does not occupy; the full module is spanned by the pairs (a, y) with
    a ending on that idempotent.
    """

    part: PartialDiagram
    generators: List[Generator]
    delta: Dict[Generator, FreeElement]
    name: str = field(default="CPD", compare=False)

    @property
    def n(self) -> int:
        return self.part.n

    @property
    def k(self) -> int:
        return self.part.col_lo

    def idempotent_of(self, y: Generator) -> FrozenSet[int]:
        return frozenset(self.part.rows) - y.image

    def basis(self) -> List[DTerm]:
        by_target = basis_by_target(self.n, self.k)
        return [(a, y) for y in self.generators for a in by_target.get(self.idempotent_of(y), [])]

    def d(self, element: FreeElement) -> FreeElement:
        """d(a, y) = (da, y) + a * delta(y), extended U-linearly."""
        out = differentiate_coefficients(element)
        for m, (a, y) in element:
            product = left_multiply(a, self.delta[y])
            out = out + FreeElement.sum(self.n, ((monomial_mul(m, m2), t) for m2, t in product))
        return out

    def d_squared_failures(self) -> List[Generator]:
        failures = []
        for y in self.generators:
            start = FreeElement.basis(self.n, (idempotent(self.n, self.idempotent_of(y)), y))
            if self.d(self.d(start)):
                failures.append(y)
        return failures

    @property
    def grading_data(self) -> InterfaceGradingData:
        return type_d_grading_data(self.part)

    def grading(self, y: Generator) -> Bigrading:
        return partial_gradings(self.part, y)

    def term_grading(self, m, a: StrandBasisElement, y: Generator) -> Bigrading:
        ga, gmu = gradings_alg(a, self.grading_data, m)
        ya, ymu = self.grading(y)
        return ga + ya, gmu + ymu

    def grading_failures(self) -> List[Tuple[Generator, DTerm]]:
        """Terms of delta(y) whose grading is not gr(y) - (0, 1)."""
        bad = []
        for y in self.generators:
            a, mu = self.grading(y)
            for m, (b, y2) in self.delta[y]:
                if self.term_grading(m, b, y2) != (a, mu - 1):
                    bad.append((y, (b, y2)))
        return bad

    def differences(self, other: "TypeDModule") -> List[str]:
        out = []
        if self.part != other.part:
            out.append(f"slabs differ: {self.part} vs {other.part}")
        if sorted(self.generators) != sorted(other.generators):
            out.append("generators differ")
            return out
        for y in sorted(self.generators):
            if self.delta[y] != other.delta[y]:
                out.append(f"delta{y}: {self.delta[y]} vs {other.delta[y]}")
        return out


def cpd(part: PartialDiagram) -> TypeDModule:
    """
    The type D structure of a right slab: admissible rectangles contribute
    I_S (x) y and admissible half-strips with their left edge on the
    interface contribute rho_{S,i,j} (x) y, weighted by their O markers.

    Args:
        part: The type D piece of a sliced diagram.

    Returns:
        The type D structure; generators carry the idempotent forced by
        the rows they leave free.

    Raises:
        PairingError: If `part` is not a type D slab.
    """
    if part.kind is not SlabKind.TYPE_D:
        logger.error("cpd called on a %s slab", part.kind.value)
        raise PairingError(f"CPD needs a type D slab, got {part.kind.value}")
    n = part.n
    gens = list(generators(part))
    delta = {}
    for y in gens:
        s = frozenset(part.rows) - y.image
        terms = [
            (r.u, (idempotent(n, s), y2)) for y2, r in rectangles_from(part, y) if r.admissible
        ]
        for y2, (i, j), region in left_half_strips_from(part, y):
            if region.admissible:
                terms.append((region.u, (rho(n, s, i, j), y2)))
        delta[y] = FreeElement.sum(n, terms)
    logger.info("Built CPD for %s: %d generators", part, len(gens))
    return TypeDModule(part, gens, delta)


def _kind(a: StrandBasisElement) -> str:
    return "rect" if a.is_idempotent else "half"


def cancellation_profile(module: TypeDModule) -> Counter:
    """
    Classify how the terms of d(d(y)) cancel.

    Every length-two path from y is labelled by its pieces: "rect" or
    "half" for a delta step and "alg" for the differential of an algebra
    coefficient. Paths that land on the same term are grouped; the profile
    counts the groups by their sorted labels. A product of coefficients
    that vanishes in the algebra is counted under "vanish". Groups of odd
    size mean d^2 != 0 and are counted under "odd".
    """
    n = module.n
    profile = Counter()
    for y in module.generators:
        landing = defaultdict(list)
        for m1, (b1, y1) in module.delta[y]:
            for b in diff_basis(b1):
                landing[(m1, (b, y1))].append(f"{_kind(b1)}·alg")
            for m2, (b2, y2) in module.delta[y1]:
                product = mul_basis(b1, b2)
                label = f"{_kind(b1)}·{_kind(b2)}"
                if product is None:
                    profile[("vanish", label)] += 1
                    continue
                landing[(monomial_mul(m1, m2), (product, y2))].append(label)
        for term, labels in landing.items():
            key = " | ".join(sorted(labels))
            profile[("odd", key) if len(labels) % 2 else ("pair", key)] += 1
    logger.debug("Cancellation profile over N=%d: %s", n, dict(profile))
    return profile
