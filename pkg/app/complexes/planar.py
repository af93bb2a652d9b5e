import logging

from ..coeffs import FreeElement
from ..grid import (
    PlanarGridDiagram,
    ToroidalGridDiagram,
    generators,
    rectangles_from,
    toroidal_generators,
    toroidal_rects,
)
from .graded import GradedComplex
from .gradings import planar_gradings, toroidal_gradings


logger = logging.getLogger(__name__)


def cfp_complex(d: PlanarGridDiagram) -> GradedComplex:
    """
    The planar complex: all (N+1)! generators, d x = sum of U(R) y over
    empty rectangles R from x to y containing no X.

    Args:
        d: A validated planar diagram.

    Returns:
        The complex with its differential table and (A, mu) gradings.
    """
    basis = list(generators(d))
    part = d.as_partial()
    diff = {}
    for x in basis:
        diff[x] = FreeElement.sum(
            d.n, ((r.u, y) for y, r in rectangles_from(part, x) if r.admissible)
        )
    grading = {x: planar_gradings(d, x) for x in basis}
    logger.info("Built CFP for %s: %d generators", d, len(basis))
    return GradedComplex(d.n, basis, diff, grading, name="CFP")


def cfk_complex(d: ToroidalGridDiagram) -> GradedComplex:
    """
    The toroidal complex: N! generators, each pair differing in two columns
    joined by two rectangles on the torus; the admissible ones are counted.
    """
    n = d.n
    basis = list(toroidal_generators(d))
    diff = {}
    for x in basis:
        terms = []
        for i in range(n):
            for j in range(i + 1, n):
                y = x.swap(i, j)
                terms.extend((r.u, y) for r in toroidal_rects(d, x, y) if r.admissible)
        diff[x] = FreeElement.sum(n, terms)
    grading = {x: toroidal_gradings(d, x) for x in basis}
    logger.info("Built CFK for %s: %d generators", d, len(basis))
    return GradedComplex(n, basis, diff, grading, name="CFK")
