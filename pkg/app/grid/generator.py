import logging
from itertools import permutations
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Tuple, Union

from .diagram import GridValidationError, PartialDiagram, PlanarGridDiagram, ToroidalGridDiagram


logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Generator:
    """
    One intersection point per beta line of a (partial) diagram:
    column col_lo + i carries the point at row rows[i].
    """

    col_lo: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.rows)) != len(self.rows):
            logger.error("Repeated rows in a generator: %s", self.rows)
            raise GridValidationError(f"Generator rows must be distinct, got {self.rows}")

    @classmethod
    def from_one_line(cls, one_line, col_lo: int = 0) -> "Generator":
        """[2,3,1] -> rows (1,2,0): the bracket notation is 1-based."""
        return cls(col_lo, tuple(r - 1 for r in one_line))

    @property
    def width(self) -> int:
        return len(self.rows)

    @property
    def columns(self) -> range:
        return range(self.col_lo, self.col_lo + len(self.rows))

    @property
    def image(self) -> FrozenSet[int]:
        return frozenset(self.rows)

    def row(self, column: int) -> int:
        return self.rows[column - self.col_lo]

    def points(self) -> List[Tuple[int, int]]:
        return [(self.col_lo + i, r) for i, r in enumerate(self.rows)]

    def replace(self, column: int, row: int) -> "Generator":
        rows = list(self.rows)
        rows[column - self.col_lo] = row
        return Generator(self.col_lo, tuple(rows))

    def swap(self, i: int, j: int) -> "Generator":
        """Exchange the rows in columns i and j."""
        rows = list(self.rows)
        a, b = i - self.col_lo, j - self.col_lo
        rows[a], rows[b] = rows[b], rows[a]
        return Generator(self.col_lo, tuple(rows))

    def one_line(self) -> List[int]:
        return [r + 1 for r in self.rows]

    def __str__(self) -> str:
        body = "[" + ",".join(str(r + 1) for r in self.rows) + "]"
        return body if self.col_lo == 0 else f"{self.col_lo}:{body}"


def concat(left: Generator, right: Generator) -> Generator:
    """The generator of a glued slab."""
    if left.col_lo + left.width != right.col_lo:
        logger.error("Concatenating %s and %s", left, right)
        raise GridValidationError(f"Generators {left} and {right} are not adjacent")
    return Generator(left.col_lo, left.rows + right.rows)


def split(x: Generator, column: int) -> Tuple[Generator, Generator]:
    """Inverse of `concat`: cut before `column`."""
    cut = column - x.col_lo
    return Generator(x.col_lo, x.rows[:cut]), Generator(column, x.rows[cut:])


def generators(diagram: Union[PlanarGridDiagram, PartialDiagram]) -> Iterator[Generator]:
    """All generators of a planar or partial diagram, lexicographic in rows."""
    if isinstance(diagram, PlanarGridDiagram):
        diagram = diagram.as_partial()
    for rows in permutations(range(diagram.n + 1), diagram.width):
        yield Generator(diagram.col_lo, rows)


def toroidal_generators(d: ToroidalGridDiagram) -> Iterator[Generator]:
    for rows in permutations(range(d.n)):
        yield Generator(0, rows)
