import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Tuple

import numpy as np
import pandas as pd

from ..coeffs import Monomial, monomial_mul
from ..complexes import Bigrading, GradedComplex
from .gf2 import packed_rank, pack_rows


logger = logging.getLogger(__name__)

Chain = Tuple[Monomial, Hashable]


class GradingViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class BidegreeWindow:
    """A box of (A, mu) bidegrees, bounds inclusive. An inverted range is an empty window."""

    a_min: int
    a_max: int
    mu_min: int
    mu_max: int

    @classmethod
    def from_config(cls, window: Mapping[str, int]) -> "BidegreeWindow":
        return cls(window["a_min"], window["a_max"], window["mu_min"], window["mu_max"])

    @property
    def is_empty(self) -> bool:
        return self.a_min > self.a_max or self.mu_min > self.mu_max

    def bidegrees(self) -> Iterator[Bigrading]:
        for a in range(self.a_min, self.a_max + 1):
            for mu in range(self.mu_min, self.mu_max + 1):
                yield a, mu

    def __contains__(self, bidegree: Bigrading) -> bool:
        a, mu = bidegree
        return self.a_min <= a <= self.a_max and self.mu_min <= mu <= self.mu_max

    def expanded(self) -> "BidegreeWindow":
        """One more mu level on top, where the incoming differentials start."""
        return BidegreeWindow(self.a_min, self.a_max, self.mu_min, self.mu_max + 1)


@dataclass
class HomologyReport:
    window: BidegreeWindow
    dims: Dict[Bigrading, int]
    chain_ranks: Dict[Bigrading, int]
    computed_window: BidegreeWindow = None
    name: str = field(default="", compare=False)

    def nonzero(self) -> Dict[Bigrading, int]:
        return {b: d for b, d in sorted(self.dims.items()) if d}

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def to_frame(self) -> pd.DataFrame:
        """Dimensions as a table: one row per A (descending), one column per mu."""
        w = self.window
        if w.is_empty:
            return pd.DataFrame()
        frame = pd.DataFrame(
            0,
            index=pd.Index(range(w.a_max, w.a_min - 1, -1), name="A"),
            columns=pd.Index(range(w.mu_min, w.mu_max + 1), name="mu"),
        )
        for (a, mu), dim in self.dims.items():
            frame.loc[a, mu] = dim
        return frame


def _monomials(n: int, degree: int) -> List[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        exponents = [0] * n
        for index in combo:
            exponents[index] += 1
        out.append(Monomial(tuple(exponents)))
    return out


class _Bases:
    """Per-bidegree chain bases of a complex, built on demand."""

    def __init__(self, c: GradedComplex):
        self.c = c
        self.monomials = lru_cache(maxsize=None)(lambda d: _monomials(c.n, d))
        self._cache: Dict[Bigrading, List[Chain]] = {}

    def __call__(self, bidegree: Bigrading) -> List[Chain]:
        if bidegree not in self._cache:
            a, mu = bidegree
            out = []
            for x in self.c.basis:
                xa, xmu = self.c.grading[x]
                d = xa - a
                if d >= 0 and xmu - 2 * d == mu:
                    out.extend((m, x) for m in self.monomials(d))
            self._cache[bidegree] = sorted(out, key=lambda t: (str(t[1]), t[0].exponents))
        return self._cache[bidegree]


def bigraded_basis(c: GradedComplex, w: BidegreeWindow) -> Dict[Bigrading, List[Chain]]:
    """F2 bases U^m x of the chain groups, one list per bidegree of the window."""
    bases = _Bases(c)
    return {b: bases(b) for b in w.bidegrees()}


def _differential_rank(c: GradedComplex, bases: _Bases, bidegree: Bigrading) -> int:
    """Rank of d from `bidegree` to one mu level below."""
    a, mu = bidegree
    source = bases(bidegree)
    target = bases((a, mu - 1))
    if not source or not target:
        return 0
    column = {t: index for index, t in enumerate(target)}
    dense = np.zeros((len(source), len(target)), dtype=np.uint8)
    for row, (m, x) in enumerate(source):
        for m2, y in c.diff[x]:
            dense[row, column[(monomial_mul(m, m2), y)]] ^= 1
    return packed_rank(pack_rows(dense, len(target)), len(target))


def check_gradings(c: GradedComplex) -> None:
    failures = c.grading_failures()
    if failures:
        x, y = failures[0]
        logger.error("%s: d%s contains %s with the wrong bidegree", c.name, x, y)
        raise GradingViolation(
            f"{c.name or 'complex'}: {len(failures)} differential terms break (A, mu) -> (A, mu-1), "
            f"first {x} -> {y}"
        )


def homology_dims(c: GradedComplex, w: BidegreeWindow) -> HomologyReport:
    """
    dim H at every bidegree of the window:
    chains - rank(outgoing d) - rank(incoming d), the incoming ranks read
    from the window grown by one mu level.

    Args:
        c: A graded complex; its differential must keep A and lower mu by one.
        w: The bidegree window.

    Returns:
        Per-bidegree dimensions over F2.

    Raises:
        GradingViolation: If a differential term breaks the bigrading.
    """
    check_gradings(c)
    bases = _Bases(c)
    ranks: Dict[Bigrading, int] = {}

    def rank(bidegree: Bigrading) -> int:
        if bidegree not in ranks:
            ranks[bidegree] = _differential_rank(c, bases, bidegree)
        return ranks[bidegree]

    dims, chain_ranks = {}, {}
    for a, mu in w.bidegrees():
        size = len(bases((a, mu)))
        chain_ranks[(a, mu)] = size
        dims[(a, mu)] = size - rank((a, mu)) - rank((a, mu + 1))
    logger.info(
        "Homology of %s over A[%d,%d] mu[%d,%d]: total dim %d",
        c.name, w.a_min, w.a_max, w.mu_min, w.mu_max, sum(dims.values()),
    )
    return HomologyReport(w, dims, chain_ranks, computed_window=w.expanded(), name=c.name)


def euler_characteristic(report: HomologyReport) -> Dict[int, Tuple[int, int]]:
    """Per A: (sum of (-1)^mu dim C, sum of (-1)^mu dim H) over the window."""
    out: Dict[int, List[int]] = {}
    for (a, mu), size in report.chain_ranks.items():
        sign = -1 if mu % 2 else 1
        chains, hom = out.setdefault(a, [0, 0])
        out[a] = [chains + sign * size, hom + sign * report.dims[(a, mu)]]
    return {a: (v[0], v[1]) for a, v in sorted(out.items())}


def presentation_dims(
    torsion: Iterable[Bigrading],
    free: Iterable[Bigrading],
    n: int,
    w: BidegreeWindow,
) -> Dict[Bigrading, int]:
    """
    Graded dimensions of F<t_1..> (+) F[U_1..U_n]<f_1..> inside the window,
    each generator given by its bidegree. A free generator at (a, mu)
    contributes C(n+d-1, d) at (a-d, mu-2d).
    """
    dims = {b: 0 for b in w.bidegrees()}
    for b in torsion:
        if b in w:
            dims[b] += 1
    for a, mu in free:
        d = 0
        while a - d >= w.a_min and mu - 2 * d >= w.mu_min:
            if (a - d, mu - 2 * d) in w:
                dims[(a - d, mu - 2 * d)] += comb(n + d - 1, d)
            d += 1
    return dims
