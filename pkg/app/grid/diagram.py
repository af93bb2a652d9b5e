import logging
from enum import Enum
from functools import cached_property, reduce
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union


logger = logging.getLogger(__name__)


class GridValidationError(ValueError):
    pass


class SlabKind(Enum):
    TYPE_A = "typeA"  # interface on the right
    TYPE_D = "typeD"  # interface on the left
    MIDDLE = "middle"  # both
    CLOSED = "closed"  # none: the whole planar diagram


MarkerMap = Tuple[Tuple[int, int], ...]


def _bad_indices(n: int, sigma: Sequence[int]) -> List[int]:
    """1-based positions that break the permutation property."""
    bad = []
    seen: Dict[int, int] = {}
    for index, value in enumerate(sigma, start=1):
        if not isinstance(value, int) or not 1 <= value <= n:
            bad.append(index)
        elif value in seen:
            bad.append(index)
        else:
            seen[value] = index
    return bad


def _check_permutations(n: int, sigma_x: Sequence[int], sigma_o: Sequence[int]) -> None:
    if not isinstance(n, int) or n < 1:
        logger.error("Grid size must be a positive integer, got %s", n)
        raise GridValidationError(f"n must be a positive integer, got {n!r}")
    for name, sigma in (("x", sigma_x), ("o", sigma_o)):
        if len(sigma) != n:
            logger.error("sigma_%s has %d entries, expected %d", name, len(sigma), n)
            raise GridValidationError(f"sigma_{name} has {len(sigma)} entries, expected {n}")
        bad = _bad_indices(n, sigma)
        if bad:
            logger.error("sigma_%s is not a permutation, offending indices %s", name, bad)
            raise GridValidationError(
                f"sigma_{name} is not a permutation of 1..{n}; offending indices: {bad}"
            )


@dataclass(frozen=True)
class PlanarGridDiagram:
    """
    N markers of each kind in R^2: X_a at (a - 1/2, sigma_x(a) - 1/2),
    O_a likewise. Generators live on the (N+1) x (N+1) lattice.
    """

    n: int
    sigma_x: Tuple[int, ...]
    sigma_o: Tuple[int, ...]

    @property
    def x_markers(self) -> Dict[int, int]:
        return {a: r for a, r in enumerate(self.sigma_x, start=1)}

    @property
    def o_markers(self) -> Dict[int, int]:
        return {a: r for a, r in enumerate(self.sigma_o, start=1)}

    def as_partial(self) -> "PartialDiagram":
        return PartialDiagram(
            n=self.n,
            col_lo=0,
            col_hi=self.n + 1,
            x_markers=tuple(sorted(self.x_markers.items())),
            o_markers=tuple(sorted(self.o_markers.items())),
            kind=SlabKind.CLOSED,
        )

    def __str__(self) -> str:
        return f"n={self.n} x={list(self.sigma_x)} o={list(self.sigma_o)}"


@dataclass(frozen=True)
class ToroidalGridDiagram:
    """The same marker data read on the torus R^2 / <(N,0), (0,N)>."""

    n: int
    sigma_x: Tuple[int, ...]
    sigma_o: Tuple[int, ...]

    @property
    def x_markers(self) -> Dict[int, int]:
        return {a: r for a, r in enumerate(self.sigma_x, start=1)}

    @property
    def o_markers(self) -> Dict[int, int]:
        return {a: r for a, r in enumerate(self.sigma_o, start=1)}

    def __str__(self) -> str:
        return f"torus n={self.n} x={list(self.sigma_x)} o={list(self.sigma_o)}"


def validate_planar(n: int, sigma_x: Sequence[int], sigma_o: Sequence[int]) -> PlanarGridDiagram:
    """
    Build a planar grid diagram, checking both marker maps are permutations
    of 1..n. A shared cell (sigma_x(a) == sigma_o(a)) is allowed.
    """
    _check_permutations(n, sigma_x, sigma_o)
    return PlanarGridDiagram(n, tuple(sigma_x), tuple(sigma_o))


def validate_toroidal(n: int, sigma_x: Sequence[int], sigma_o: Sequence[int]) -> ToroidalGridDiagram:
    _check_permutations(n, sigma_x, sigma_o)
    return ToroidalGridDiagram(n, tuple(sigma_x), tuple(sigma_o))


def wrap(d: PlanarGridDiagram) -> ToroidalGridDiagram:
    """Identify the outer alpha and beta lines of a planar diagram."""
    return ToroidalGridDiagram(d.n, d.sigma_x, d.sigma_o)


def unwrap(d: ToroidalGridDiagram) -> PlanarGridDiagram:
    """Cut the torus along alpha_0 = alpha_N and beta_0 = beta_N."""
    return PlanarGridDiagram(d.n, d.sigma_x, d.sigma_o)


@dataclass(frozen=True)
class PartialDiagram:
    """
    A vertical slab of a planar grid diagram.

    The beta lines present are col_lo .. col_hi - 1. Interfaces sit at
    x = col_lo - 1/4 (left) and x = col_hi - 1/4 (right), so the marker
    columns of the slab are col_lo + 1 .. min(col_hi, n).
    """

    n: int
    col_lo: int
    col_hi: int
    x_markers: MarkerMap
    o_markers: MarkerMap
    kind: SlabKind

    @property
    def width(self) -> int:
        return self.col_hi - self.col_lo

    @property
    def columns(self) -> range:
        return range(self.col_lo, self.col_hi)

    @property
    def marker_columns(self) -> range:
        return range(self.col_lo + 1, min(self.col_hi, self.n) + 1)

    @property
    def rows(self) -> range:
        return range(self.n + 1)

    @property
    def has_left_interface(self) -> bool:
        return self.kind in (SlabKind.TYPE_D, SlabKind.MIDDLE)

    @property
    def has_right_interface(self) -> bool:
        return self.kind in (SlabKind.TYPE_A, SlabKind.MIDDLE)

    @cached_property
    def x_map(self) -> Dict[int, int]:
        return dict(self.x_markers)

    @cached_property
    def o_map(self) -> Dict[int, int]:
        return dict(self.o_markers)

    def to_planar(self) -> PlanarGridDiagram:
        if self.kind is not SlabKind.CLOSED:
            logger.error("to_planar on a %s slab", self.kind.value)
            raise GridValidationError(f"A {self.kind.value} slab is not a whole diagram")
        return validate_planar(
            self.n,
            [self.x_map[a] for a in range(1, self.n + 1)],
            [self.o_map[a] for a in range(1, self.n + 1)],
        )

    def __str__(self) -> str:
        return (
            f"{self.kind.value} slab n={self.n} columns [{self.col_lo},{self.col_hi}) "
            f"X={dict(self.x_markers)} O={dict(self.o_markers)}"
        )


def make_partial(
    n: int,
    col_lo: int,
    col_hi: int,
    x_markers: Dict[int, int],
    o_markers: Dict[int, int],
    kind: SlabKind,
) -> PartialDiagram:
    """Build a slab, checking the marker maps against its columns."""
    if not 0 <= col_lo <= col_hi <= n + 1:
        logger.error("Slab columns [%d,%d) for n=%d", col_lo, col_hi, n)
        raise GridValidationError(f"Bad slab columns [{col_lo},{col_hi}) for n={n}")
    if kind is SlabKind.TYPE_A and col_lo != 0:
        logger.error("Type A slab starting at column %d", col_lo)
        raise GridValidationError("A type A slab starts at column 0")
    if kind is SlabKind.TYPE_D and col_hi != n + 1:
        logger.error("Type D slab ending at column %d", col_hi)
        raise GridValidationError("A type D slab ends at column n")
    expected = set(range(col_lo + 1, min(col_hi, n) + 1))
    for name, markers in (("X", x_markers), ("O", o_markers)):
        if set(markers) != expected:
            logger.error("%s markers %s do not fill columns %s", name, markers, sorted(expected))
            raise GridValidationError(
                f"{name} markers must occupy exactly columns {sorted(expected)}"
            )
        rows = list(markers.values())
        if len(set(rows)) != len(rows) or any(not 1 <= r <= n for r in rows):
            logger.error("%s marker rows %s are not distinct rows of 1..%d", name, rows, n)
            raise GridValidationError(f"{name} marker rows must be distinct values in 1..{n}")
    return PartialDiagram(
        n=n,
        col_lo=col_lo,
        col_hi=col_hi,
        x_markers=tuple(sorted(x_markers.items())),
        o_markers=tuple(sorted(o_markers.items())),
        kind=kind,
    )


def empty_middle(n: int, k: int) -> PartialDiagram:
    """The middle slab with no beta lines, sitting at the cut k."""
    return make_partial(n, k, k, {}, {}, SlabKind.MIDDLE)


def _restrict(d: PlanarGridDiagram, col_lo: int, col_hi: int, kind: SlabKind) -> PartialDiagram:
    cols = range(col_lo + 1, min(col_hi, d.n) + 1)
    return make_partial(
        d.n,
        col_lo,
        col_hi,
        {a: d.x_markers[a] for a in cols},
        {a: d.o_markers[a] for a in cols},
        kind,
    )


def slice_diagram(d: PlanarGridDiagram, cuts: Iterable[int]) -> List[PartialDiagram]:
    """
    Cut `d` along the vertical lines x = k - 1/4 for every k in `cuts`.

    Args:
        d: The diagram to cut.
        cuts: Strictly ascending columns in 1..n.

    Returns:
        The type A piece, the middle pieces and the type D piece, left to
        right. No cuts gives the whole diagram as a closed slab.

    Raises:
        GridValidationError: On out-of-range or non-ascending cuts.
    """
    cuts = list(cuts)
    for k in cuts:
        if not isinstance(k, int) or not 1 <= k <= d.n:
            logger.error("Cut %s out of range 1..%d", k, d.n)
            raise GridValidationError(f"Cut {k!r} is out of range 1..{d.n}")
    if any(a >= b for a, b in zip(cuts, cuts[1:])):
        logger.error("Cuts %s are not strictly ascending", cuts)
        raise GridValidationError(f"Cuts must be strictly ascending, got {cuts}")
    if not cuts:
        return [d.as_partial()]

    bounds = [0] + cuts + [d.n + 1]
    pieces = []
    for index, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
        if index == 0:
            kind = SlabKind.TYPE_A
        elif index == len(bounds) - 2:
            kind = SlabKind.TYPE_D
        else:
            kind = SlabKind.MIDDLE
        pieces.append(_restrict(d, lo, hi, kind))
    logger.debug("Sliced %s at %s into %d pieces", d, cuts, len(pieces))
    return pieces


def glue(
    a: PartialDiagram, b: PartialDiagram
) -> Union[PartialDiagram, PlanarGridDiagram]:
    """
    Put `b` to the right of `a` along their common interface.

    Gluing a type A piece to a type D piece closes the diagram up.
    """
    if a.n != b.n:
        logger.error("Gluing slabs of n=%d and n=%d", a.n, b.n)
        raise GridValidationError(f"Cannot glue slabs of n={a.n} and n={b.n}")
    if not a.has_right_interface or not b.has_left_interface:
        logger.error("Cannot glue %s to %s", a.kind, b.kind)
        raise GridValidationError(
            f"Cannot glue a {a.kind.value} slab to a {b.kind.value} slab"
        )
    if a.col_hi != b.col_lo:
        logger.error("Interfaces do not match: %d vs %d", a.col_hi, b.col_lo)
        raise GridValidationError(
            f"Interface mismatch: left slab ends at {a.col_hi}, right starts at {b.col_lo}"
        )
    for name, left, right in (("X", a.x_map, b.x_map), ("O", a.o_map, b.o_map)):
        clash = set(left.values()) & set(right.values())
        if clash:
            logger.error("%s marker rows %s clash while gluing", name, sorted(clash))
            raise GridValidationError(f"{name} marker rows {sorted(clash)} appear on both sides")

    left_open = a.kind is SlabKind.MIDDLE
    right_open = b.kind is SlabKind.MIDDLE
    if left_open and right_open:
        kind = SlabKind.MIDDLE
    elif left_open:
        kind = SlabKind.TYPE_D
    elif right_open:
        kind = SlabKind.TYPE_A
    else:
        kind = SlabKind.CLOSED
    glued = make_partial(
        a.n,
        a.col_lo,
        b.col_hi,
        {**a.x_map, **b.x_map},
        {**a.o_map, **b.o_map},
        kind,
    )
    if kind is SlabKind.CLOSED:
        return glued.to_planar()
    return glued


def glue_all(pieces: Sequence[PartialDiagram]) -> Union[PartialDiagram, PlanarGridDiagram]:
    if len(pieces) == 1 and pieces[0].kind is SlabKind.CLOSED:
        return pieces[0].to_planar()
    return reduce(glue, pieces)

