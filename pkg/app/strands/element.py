import logging
from functools import lru_cache
from itertools import combinations
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple


logger = logging.getLogger(__name__)


class StrandError(ValueError):
    pass


class FactorizationError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class StrandBasisElement:
    """
    A strand diagram on positions 0..n, stored as a partial bijection:
    `strands` lists (source, target) pairs sorted by source.

    Upward-veering elements (target >= source) span A_{N,k}; downward-veering
    ones span its mirror image, the algebra acting on the far side of a DD
    bimodule.
    """

    n: int
    strands: Tuple[Tuple[int, int], ...]
    downward: bool = False

    def __post_init__(self):
        sources = [s for s, _ in self.strands]
        targets = [t for _, t in self.strands]
        if sources != sorted(set(sources)) or len(set(targets)) != len(targets):
            logger.error("Bad strands %s", self.strands)
            raise StrandError(f"Not a partial bijection: {self.strands}")
        if any(not 0 <= p <= self.n for p in sources + targets):
            logger.error("Strands out of range for n=%d: %s", self.n, self.strands)
            raise StrandError(f"Positions out of range 0..{self.n}: {self.strands}")
        if self.downward:
            if any(t > s for s, t in self.strands):
                logger.error("Upward strand in a downward element: %s", self.strands)
                raise StrandError(f"Not downward-veering: {self.strands}")
        elif any(t < s for s, t in self.strands):
            logger.error("Downward strand in an upward element: %s", self.strands)
            raise StrandError(f"Not upward-veering: {self.strands}")

    @classmethod
    def from_map(cls, n: int, mapping: Dict[int, int], downward: bool = False) -> "StrandBasisElement":
        return cls(n, tuple(sorted(mapping.items())), downward)

    @property
    def k(self) -> int:
        return len(self.strands)

    @property
    def source(self) -> FrozenSet[int]:
        """Left idempotent."""
        return frozenset(s for s, _ in self.strands)

    @property
    def target(self) -> FrozenSet[int]:
        """Right idempotent."""
        return frozenset(t for _, t in self.strands)

    @property
    def is_idempotent(self) -> bool:
        return all(s == t for s, t in self.strands)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.strands)

    def __str__(self) -> str:
        arrows = ",".join(f"{s}->{t}" for s, t in self.strands)
        return ("'" if self.downward else "") + "{" + arrows + "}"


def cross(f: StrandBasisElement) -> int:
    """Minimal number of crossings: inversions of the partial bijection."""
    targets = [t for _, t in f.strands]
    return sum(1 for a, b in combinations(targets, 2) if a > b)


def idempotent(n: int, s: Iterable[int]) -> StrandBasisElement:
    return StrandBasisElement.from_map(n, {p: p for p in s})


def rho(n: int, s: Iterable[int], i: int, j: int) -> StrandBasisElement:
    """The identity on S minus i, plus one strand from i up to j."""
    s = frozenset(s)
    if not i < j:
        logger.error("rho with i=%d, j=%d", i, j)
        raise StrandError(f"rho needs i < j, got i={i}, j={j}")
    if i not in s or j in s:
        logger.error("rho with S=%s, i=%d, j=%d", sorted(s), i, j)
        raise StrandError(f"rho_{{S,{i},{j}}} needs {i} in S and {j} not in S, S={sorted(s)}")
    mapping = {p: p for p in s if p != i}
    mapping[i] = j
    return StrandBasisElement.from_map(n, mapping)


def rho_down(n: int, s: Iterable[int], i: int, j: int) -> StrandBasisElement:
    """Mirror-side generator: the identity on S minus j, plus a strand from j down to i."""
    s = frozenset(s)
    if not i < j:
        logger.error("rho_down with i=%d, j=%d", i, j)
        raise StrandError(f"rho_down needs i < j, got i={i}, j={j}")
    if j not in s or i in s:
        logger.error("rho_down with S=%s, i=%d, j=%d", sorted(s), i, j)
        raise StrandError(f"rho'_{{{i},{j}}} needs {j} in S and {i} not in S, S={sorted(s)}")
    mapping = {p: p for p in s if p != j}
    mapping[j] = i
    return StrandBasisElement.from_map(n, mapping, downward=True)


def reverse(f: StrandBasisElement) -> StrandBasisElement:
    """
    Relabel positions r -> n - r and run every strand backwards.
    An involutive anti-automorphism: reverse(fg) = reverse(g) reverse(f).
    """
    n = f.n
    return StrandBasisElement.from_map(n, {n - t: n - s for s, t in f.strands}, f.downward)


def mirror(f: StrandBasisElement) -> StrandBasisElement:
    """
    Relabel positions r -> n - r keeping strand directions: upward-veering
    elements become downward-veering ones. A homomorphism.
    """
    n = f.n
    return StrandBasisElement.from_map(n, {n - s: n - t for s, t in f.strands}, not f.downward)


def _upward_maps(n: int, s: Tuple[int, ...]) -> Iterable[Dict[int, int]]:
    if not s:
        yield {}
        return
    head, rest = s[0], s[1:]
    for tail in _upward_maps(n, rest):
        used = set(tail.values())
        for t in range(head, n + 1):
            if t not in used:
                yield {head: t, **tail}


@lru_cache(maxsize=None)
def basis(n: int, k: int) -> Tuple[StrandBasisElement, ...]:
    """B(N, k): every upward-veering partial bijection between k-subsets of 0..n."""
    if not 0 <= k <= n + 1:
        logger.error("Basis asked for n=%d, k=%d", n, k)
        raise StrandError(f"k must lie in 0..{n + 1}, got {k}")
    out = []
    for s in combinations(range(n + 1), k):
        for mapping in _upward_maps(n, s):
            out.append(StrandBasisElement.from_map(n, mapping))
    out.sort()
    logger.debug("Basis of A_{%d,%d} has %d elements", n, k, len(out))
    return tuple(out)


@lru_cache(maxsize=None)
def mirrored_basis(n: int, k: int) -> Tuple[StrandBasisElement, ...]:
    return tuple(sorted(mirror(f) for f in basis(n, k)))


def _index(elements: Iterable[StrandBasisElement], attr: str) -> Dict[FrozenSet[int], List[StrandBasisElement]]:
    index: Dict[FrozenSet[int], List[StrandBasisElement]] = {}
    for f in elements:
        index.setdefault(getattr(f, attr), []).append(f)
    return index


@lru_cache(maxsize=None)
def basis_by_target(n: int, k: int, downward: bool = False) -> Dict[FrozenSet[int], List[StrandBasisElement]]:
    elements = mirrored_basis(n, k) if downward else basis(n, k)
    return _index(elements, "target")


@lru_cache(maxsize=None)
def basis_by_source(n: int, k: int, downward: bool = False) -> Dict[FrozenSet[int], List[StrandBasisElement]]:
    elements = mirrored_basis(n, k) if downward else basis(n, k)
    return _index(elements, "source")
