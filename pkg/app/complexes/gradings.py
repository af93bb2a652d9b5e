import logging
from typing import FrozenSet, Iterable, List, Optional, Tuple

from ..grid import (
    Generator,
    PartialDiagram,
    PlanarGridDiagram,
    SlabKind,
    ToroidalGridDiagram,
    lower_left_count,
)


logger = logging.getLogger(__name__)


class GradingError(ValueError):
    pass


def _marker_points(markers) -> List[Tuple[float, float]]:
    return [(a - 0.5, s - 0.5) for a, s in markers.items()]


def _gradings(x_marks, o_marks, completed, points) -> Tuple[int, int]:
    i_o = lower_left_count(o_marks, points)
    a = lower_left_count(x_marks, points) - i_o
    mu = lower_left_count(completed, points) - 2 * i_o
    return a, mu


def planar_gradings(d: PlanarGridDiagram, x: Generator) -> Tuple[int, int]:
    """A = I(X, x) - I(O, x), mu = I(x, x) - 2 I(O, x)."""
    points = x.points()
    return _gradings(_marker_points(d.x_markers), _marker_points(d.o_markers), points, points)


def toroidal_gradings(d: ToroidalGridDiagram, x: Generator) -> Tuple[int, int]:
    """
    The planar formulas on the fundamental domain [0, N)^2. They differ from
    the symmetrized toroidal formulas by a constant, so relative gradings agree.
    """
    points = x.points()
    return _gradings(_marker_points(d.x_markers), _marker_points(d.o_markers), points, points)


def left_completion(part: PartialDiagram) -> Tuple[List[int], List[int]]:
    """
    Canonical X and O rows of the missing left part (columns 1..col_lo):
    the rows the slab does not use, ascending, left columns first.
    """
    k = part.col_lo
    rows = range(1, part.n + 1)
    x_rows = sorted(set(rows) - set(part.x_map.values()))[:k]
    o_rows = sorted(set(rows) - set(part.o_map.values()))[:k]
    return x_rows, o_rows


def _completion_idem(part: PartialDiagram, x: Generator, idem: Optional[Iterable[int]]) -> FrozenSet[int]:
    free = frozenset(part.rows) - x.image
    if part.kind is SlabKind.TYPE_D:
        if idem is not None and frozenset(idem) != free:
            logger.error("Idempotent %s does not match generator %s", sorted(idem), x)
            raise GradingError(f"Type D generator {x} forces the idempotent {sorted(free)}")
        return free
    if idem is None:
        logger.error("Middle slab grading of %s needs an idempotent", x)
        raise GradingError("Gradings on a middle slab need the idempotent")
    idem = frozenset(idem)
    if len(idem) != part.col_lo or idem & x.image:
        logger.error("Idempotent %s is incompatible with %s", sorted(idem), x)
        raise GradingError(
            f"Idempotent {sorted(idem)} must have {part.col_lo} rows avoiding {sorted(x.image)}"
        )
    return idem


def partial_gradings(
    part: PartialDiagram, x: Generator, idem: Optional[Iterable[int]] = None
) -> Tuple[int, int]:
    """
    (A, mu) of a generator of a slab.

    Type A uses the slab's own markers. Type D and middle slabs are completed
    on the left: canonical markers in columns 1..col_lo and the points of
    the idempotent in columns 0..col_lo-1. Anything to the right never lies
    to the lower left of the slab, so only the left completion matters.
    """
    points = x.points()
    x_marks = _marker_points(part.x_map)
    o_marks = _marker_points(part.o_map)

    if part.kind in (SlabKind.TYPE_A, SlabKind.CLOSED):
        return _gradings(x_marks, o_marks, points, points)

    idem = _completion_idem(part, x, idem)
    x_rows, o_rows = left_completion(part)
    x_marks += [(a - 0.5, s - 0.5) for a, s in enumerate(x_rows, start=1)]
    o_marks += [(a - 0.5, s - 0.5) for a, s in enumerate(o_rows, start=1)]
    completed = points + [(c, r) for c, r in enumerate(sorted(idem))]
    return _gradings(x_marks, o_marks, completed, points)
