import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Tuple

from ..coeffs import FreeElement, monomial_mul


logger = logging.getLogger(__name__)

Bigrading = Tuple[int, int]


@dataclass
class GradedComplex:
    """
    A free F2[U_1..U_n]-complex with a distinguished basis, its differential
    on the basis and an (A, mu) bigrading of the basis.
    """

    n: int
    basis: List[Hashable]
    diff: Dict[Hashable, FreeElement]
    grading: Dict[Hashable, Bigrading]
    name: str = field(default="", compare=False)

    def d(self, element: FreeElement) -> FreeElement:
        """The differential extended U-linearly."""
        terms = []
        for m, x in element:
            for m2, y in self.diff[x]:
                terms.append((monomial_mul(m, m2), y))
        return FreeElement.sum(self.n, terms)

    def d_squared_failures(self) -> List[Hashable]:
        """Basis elements x with d(d(x)) != 0."""
        return [x for x in self.basis if self.d(self.diff[x])]

    def grading_failures(self) -> List[Tuple[Hashable, Hashable]]:
        """Differential terms that do not keep A and lower mu by one."""
        bad = []
        for x in self.basis:
            a, mu = self.grading[x]
            for m, y in self.diff[x]:
                ya, ymu = self.grading[y]
                da, dmu = m.grading
                if (ya + da, ymu + dmu) != (a, mu - 1):
                    bad.append((x, y))
        return bad

    def nonzero_rows(self) -> Dict[Hashable, FreeElement]:
        return {x: self.diff[x] for x in self.basis if self.diff[x]}

    def differences(self, other: "GradedComplex") -> List[str]:
        """Human-readable list of what differs from `other`; empty if identical."""
        out = []
        if set(self.basis) != set(other.basis):
            out.append(
                f"basis differs: {len(set(self.basis) - set(other.basis))} only here, "
                f"{len(set(other.basis) - set(self.basis))} only there"
            )
            return out
        for x in sorted(self.basis):
            if self.diff[x] != other.diff[x]:
                out.append(f"d{x}: {self.diff[x]} vs {other.diff[x]}")
            if self.grading[x] != other.grading[x]:
                out.append(f"gr{x}: {self.grading[x]} vs {other.grading[x]}")
        return out
