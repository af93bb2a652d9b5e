from typing import List, Optional, Tuple, Union

from .diagram import PartialDiagram, PlanarGridDiagram, ToroidalGridDiagram
from .generator import Generator


Slot = Tuple[str, int]


def _x_slots(part: PartialDiagram) -> List[Slot]:
    slots: List[Slot] = []
    if part.has_left_interface:
        slots.append(("iface", part.col_lo))
    for c in part.columns:
        slots.append(("lattice", c))
        if c + 1 in part.x_map:
            slots.append(("marker", c + 1))
    # a zero-width middle slab is a single interface line
    if part.has_right_interface and not (part.has_left_interface and part.width == 0):
        slots.append(("iface", part.col_hi))
    return slots


def sketch(
    diagram: Union[PlanarGridDiagram, ToroidalGridDiagram, PartialDiagram],
    generator: Optional[Generator] = None,
) -> str:
    """
    ASCII picture, top row first: `+` lattice point, `*` generator point,
    `X`/`O` markers, `@` a cell holding both, `|` an interface.
    """
    if isinstance(diagram, ToroidalGridDiagram):
        n = diagram.n
        x_map, o_map = diagram.x_markers, diagram.o_markers
        xs: List[Slot] = []
        for c in range(n):
            xs += [("lattice", c), ("marker", c + 1)]
        lattice_rows = range(n)
    else:
        part = diagram.as_partial() if isinstance(diagram, PlanarGridDiagram) else diagram
        n = part.n
        x_map, o_map = part.x_map, part.o_map
        xs = _x_slots(part)
        lattice_rows = range(n + 1)

    ys: List[Slot] = []
    for r in reversed(lattice_rows):
        if isinstance(diagram, ToroidalGridDiagram) or r < n:
            ys.append(("marker", r + 1))
        ys.append(("lattice", r))

    points = set(generator.points()) if generator is not None else set()
    lines = []
    for ykind, yv in ys:
        chars = []
        for xkind, xv in xs:
            if xkind == "iface":
                chars.append("|")
            elif xkind == "lattice" and ykind == "lattice":
                chars.append("*" if (xv, yv) in points else "+")
            elif xkind == "marker" and ykind == "marker":
                has_x = x_map.get(xv) == yv
                has_o = o_map.get(xv) == yv
                chars.append("@" if has_x and has_o else "X" if has_x else "O" if has_o else " ")
            else:
                chars.append(" ")
        lines.append(" ".join(chars).rstrip())
    return "\n".join(lines)
