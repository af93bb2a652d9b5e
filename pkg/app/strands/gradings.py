import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple

from ..coeffs import Monomial
from .element import StrandBasisElement, StrandError, cross


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InterfaceGradingData:
    """
    Heights of the X and O markers to the left of an interface.

    Heights are stored as integer rows: r stands for the line y = r - 1/2,
    the same convention as marker rows.
    """

    l_x: FrozenSet[int]
    l_o: FrozenSet[int]

    @classmethod
    def of(cls, l_x: Iterable[int], l_o: Iterable[int]) -> "InterfaceGradingData":
        return cls(frozenset(l_x), frozenset(l_o))


def _crossed(f: StrandBasisElement, heights: FrozenSet[int]) -> int:
    # strand s -> t passes height r - 1/2 iff s < r - 1/2 < t
    return sum(1 for s, t in f.strands for r in heights if s + 1 <= r <= t)


def gradings_alg(
    f: StrandBasisElement,
    gd: InterfaceGradingData,
    monomial: Optional[Monomial] = None,
) -> Tuple[int, int]:
    """
    (A, mu) of U^monomial * f: A = L_X - L_O and mu = cross - 2 L_O, where
    L_X counts intersections of the strands with the X heights. Each U
    contributes (-1, -2).
    """
    if f.downward:
        logger.error("Gradings asked for downward element %s", f)
        raise StrandError("Gradings are defined on upward-veering elements only")
    l_x = _crossed(f, gd.l_x)
    l_o = _crossed(f, gd.l_o)
    a, mu = l_x - l_o, cross(f) - 2 * l_o
    if monomial is not None:
        da, dmu = monomial.grading
        a, mu = a + da, mu + dmu
    return a, mu
