"""
Rectangles, half-strips and strips between generators.

Columns and rows of a region are integers. An edge on an interface is
stored as the integer column c of the interface line x = c - 1/4; for
half-integer marker coordinates that edge behaves exactly like the line
x = c, only the test for generator points differs.
"""

import logging
from enum import Enum
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from ..coeffs import Monomial
from .diagram import (
    GridValidationError,
    PartialDiagram,
    PlanarGridDiagram,
    SlabKind,
    ToroidalGridDiagram,
)
from .generator import Generator


logger = logging.getLogger(__name__)

Point = Tuple[float, float]
Chord = Tuple[int, int]


class RegionKind(Enum):
    RECTANGLE = "rectangle"
    HALFSTRIP_LEFT_EDGE = "halfstrip_left_edge"
    HALFSTRIP_RIGHT_EDGE = "halfstrip_right_edge"
    STRIP = "strip"


@dataclass(frozen=True)
class Region:
    kind: RegionKind
    col_lo: int
    col_hi: int
    row_lo: int
    row_hi: int
    x_counts: Tuple[int, ...]
    o_counts: Tuple[int, ...]
    empty: bool
    toroidal: bool = False

    @property
    def has_x(self) -> bool:
        return any(self.x_counts)

    @property
    def admissible(self) -> bool:
        """Counted by the differentials: empty and free of X markers."""
        return self.empty and not self.has_x

    @property
    def u(self) -> Monomial:
        return Monomial(self.o_counts)


def lower_left_count(e: Iterable[Point], f: Iterable[Point]) -> int:
    """I(E, F): pairs (e, f) with e strictly to the lower left of f."""
    f = list(f)
    return sum(1 for e1, e2 in e for f1, f2 in f if e1 < f1 and e2 < f2)


def _as_part(diagram: Union[PlanarGridDiagram, PartialDiagram]) -> PartialDiagram:
    if isinstance(diagram, PlanarGridDiagram):
        return diagram.as_partial()
    return diagram


def count_markers(
    markers: Dict[int, int],
    n: int,
    first_col: int,
    last_col: int,
    row_lo: int,
    row_hi: int,
) -> Tuple[int, ...]:
    """
    Marker multiplicities of the box spanning marker columns
    first_col..last_col and rows (row_lo, row_hi).
    """
    counts = [0] * n
    for a, s in markers.items():
        if first_col <= a <= last_col and row_lo < s <= row_hi:
            counts[a - 1] = 1
    return tuple(counts)


def _box(
    part: PartialDiagram,
    kind: RegionKind,
    col_lo: int,
    col_hi: int,
    row_lo: int,
    row_hi: int,
    empty: bool,
) -> Region:
    return Region(
        kind=kind,
        col_lo=col_lo,
        col_hi=col_hi,
        row_lo=row_lo,
        row_hi=row_hi,
        x_counts=count_markers(part.x_map, part.n, col_lo + 1, col_hi, row_lo, row_hi),
        o_counts=count_markers(part.o_map, part.n, col_lo + 1, col_hi, row_lo, row_hi),
        empty=empty,
    )


def _differing_columns(x: Generator, y: Generator) -> List[int]:
    if x.col_lo != y.col_lo or x.width != y.width:
        logger.error("Generators %s and %s are not comparable", x, y)
        raise GridValidationError(f"Generators {x} and {y} belong to different slabs")
    return [c for c in x.columns if x.row(c) != y.row(c)]


def planar_rect(
    diagram: Union[PlanarGridDiagram, PartialDiagram], x: Generator, y: Generator
) -> Optional[Region]:
    """
    The rectangle from x to y: lower left and upper right corners on x,
    the other two on y. In the plane there is at most one.
    """
    part = _as_part(diagram)
    diff = _differing_columns(x, y)
    if len(diff) != 2:
        return None
    i, j = diff
    ri, rj = x.row(i), x.row(j)
    if not (ri < rj and y.row(i) == rj and y.row(j) == ri):
        return None
    empty = not any(ri < x.row(m) < rj for m in range(i + 1, j))
    return _box(part, RegionKind.RECTANGLE, i, j, ri, rj, empty)


def rectangles_from(
    diagram: Union[PlanarGridDiagram, PartialDiagram], x: Generator
) -> Iterator[Tuple[Generator, Region]]:
    """Every rectangle starting at x, with its target generator."""
    part = _as_part(diagram)
    cols = list(x.columns)
    for a, i in enumerate(cols):
        for j in cols[a + 1 :]:
            if x.row(i) < x.row(j):
                y = x.swap(i, j)
                yield y, planar_rect(part, x, y)


def toroidal_rects(d: ToroidalGridDiagram, x: Generator, y: Generator) -> List[Region]:
    """The two rectangles on the torus from x to y, or none."""
    diff = _differing_columns(x, y)
    if len(diff) != 2:
        return []
    i, j = diff
    ri, rj = x.row(i), x.row(j)
    if y.row(i) != rj or y.row(j) != ri:
        return []
    return [_torus_rect(d, x, i, j, ri, rj), _torus_rect(d, x, j, i, rj, ri)]


def _torus_rect(d: ToroidalGridDiagram, x: Generator, c0: int, c1: int, r0: int, r1: int) -> Region:
    n = d.n
    width = (c1 - c0) % n
    height = (r1 - r0) % n

    def counts(markers: Dict[int, int]) -> Tuple[int, ...]:
        return tuple(
            1 if (a - 1 - c0) % n < width and (markers[a] - 1 - r0) % n < height else 0
            for a in range(1, n + 1)
        )

    empty = not any(
        0 < (c - c0) % n < width and 0 < (r - r0) % n < height for c, r in x.points()
    )
    return Region(
        kind=RegionKind.RECTANGLE,
        col_lo=c0,
        col_hi=c1,
        row_lo=r0,
        row_hi=r1,
        x_counts=counts(d.x_markers),
        o_counts=counts(d.o_markers),
        empty=empty,
        toroidal=True,
    )


def half_strip_left_edge(
    part: PartialDiagram, x: Generator, y: Generator
) -> Optional[Tuple[Chord, Region]]:
    """
    Half-strip with its left edge on the left interface: the point of x in
    column m moves down from row j to row i. The chord is (i, j).
    """
    if not part.has_left_interface:
        logger.error("Left half-strip on a %s slab", part.kind.value)
        raise GridValidationError(f"A {part.kind.value} slab has no left interface")
    diff = _differing_columns(x, y)
    if len(diff) != 1:
        return None
    m = diff[0]
    j, i = x.row(m), y.row(m)
    if not i < j:
        return None
    c = part.col_lo
    empty = not any(i < x.row(col) < j for col in range(c, m))
    return (i, j), _box(part, RegionKind.HALFSTRIP_LEFT_EDGE, c, m, i, j, empty)


def half_strip_right_edge(
    part: PartialDiagram, x: Generator, y: Generator
) -> Optional[Tuple[Chord, Region]]:
    """
    Half-strip with its right edge on the right interface: the point of x in
    column m moves up from row i to row j. The chord is (i, j).
    """
    if not part.has_right_interface:
        logger.error("Right half-strip on a %s slab", part.kind.value)
        raise GridValidationError(f"A {part.kind.value} slab has no right interface")
    diff = _differing_columns(x, y)
    if len(diff) != 1:
        return None
    m = diff[0]
    i, j = x.row(m), y.row(m)
    if not i < j:
        return None
    c = part.col_hi
    empty = not any(i < x.row(col) < j for col in range(m + 1, c))
    return (i, j), _box(part, RegionKind.HALFSTRIP_RIGHT_EDGE, m, c, i, j, empty)


def left_half_strips_from(
    part: PartialDiagram, x: Generator
) -> Iterator[Tuple[Generator, Chord, Region]]:
    """Every left-edge half-strip starting at x."""
    used = x.image
    for m in x.columns:
        for i in range(x.row(m)):
            if i in used:
                continue
            y = x.replace(m, i)
            chord, region = half_strip_left_edge(part, x, y)
            yield y, chord, region


def right_half_strips_from(
    part: PartialDiagram, x: Generator
) -> Iterator[Tuple[Generator, Chord, Region]]:
    """Every right-edge half-strip starting at x."""
    used = x.image
    for m in x.columns:
        for j in range(x.row(m) + 1, part.n + 1):
            if j in used:
                continue
            y = x.replace(m, j)
            chord, region = half_strip_right_edge(part, x, y)
            yield y, chord, region


def strip(part: PartialDiagram, chord: Chord, x: Generator) -> Optional[Region]:
    """
    The full horizontal strip across a middle slab between rows i and j.
    Present only if no point of x lies in it, boundary rows included.
    """
    if part.kind is not SlabKind.MIDDLE:
        logger.error("Strip on a %s slab", part.kind.value)
        raise GridValidationError(f"Strips live in middle slabs, not {part.kind.value}")
    i, j = chord
    if not i < j:
        logger.error("Strip chord %s", chord)
        raise GridValidationError(f"Strip chord must have i < j, got {chord}")
    if any(i <= r <= j for r in x.rows):
        return None
    return _box(part, RegionKind.STRIP, part.col_lo, part.col_hi, i, j, True)
