"""
Box tensor products of the bordered pieces, computed on the glued
generators so the results can be compared term by term with the modules
of the glued slab.
"""

import logging
from typing import Dict

from ..coeffs import FreeElement, monomial_mul
from ..complexes import GradedComplex, partial_gradings
from ..grid import Generator, concat, glue
from ..strands import idempotent
from .common import PairingError, check_interface
from .dd import AbsorbingModule, DDBimodule
from .middle import MiddleGenerator, MiddleModule
from .type_a import TypeAModule
from .type_d import TypeDModule


logger = logging.getLogger(__name__)


def pair_AD(ma: TypeAModule, md: TypeDModule) -> GradedComplex:
    """
    CPA (x) CPD over the glued diagram: generators x (x) y with
    Im x = I(y), d(x (x) y) = dx (x) y + sum x * a (x) y' over a (x) y'
    in delta(y). Gradings add.

    Args:
        ma: Type A module of the left piece.
        md: Type D structure of the right piece.

    Returns:
        The glued complex, comparable with `cfp_complex` of the whole
        diagram through `GradedComplex.differences`.

    Raises:
        PairingError: If the two pieces do not share an interface.
    """
    check_interface(ma.part, md.part)
    n = ma.n
    by_idem: Dict[frozenset, list] = {}
    for y in md.generators:
        by_idem.setdefault(md.idempotent_of(y), []).append(y)

    basis, diff, grading = [], {}, {}
    for x in ma.basis:
        for y in by_idem.get(x.image, []):
            glued = concat(x, y)
            terms = [(m, concat(x2, y)) for m, x2 in ma.diff[x]]
            for m2, (b, y2) in md.delta[y]:
                for m1, x2 in ma.act_basis(x, b):
                    terms.append((monomial_mul(m1, m2), concat(x2, y2)))
            basis.append(glued)
            diff[glued] = FreeElement.sum(n, terms)
            ga, gmu = partial_gradings(ma.part, x)
            ha, hmu = partial_gradings(md.part, y)
            grading[glued] = (ga + ha, gmu + hmu)
    basis.sort()
    logger.info("Paired %s with %s: %d generators", ma.name, md.name, len(basis))
    return GradedComplex(n, basis, diff, grading, name=f"{ma.name} (x) {md.name}")


def tensor_A_DA(ma: TypeAModule, mm: MiddleModule) -> TypeAModule:
    """CPA (x) CPDA as a type A module over the right interface of the middle slab."""
    check_interface(ma.part, mm.part)
    n = ma.n
    by_idem: Dict[frozenset, list] = {}
    for g in mm.generators:
        by_idem.setdefault(g.left, []).append(g)
    moves: Dict[MiddleGenerator, list] = {}
    for (g, i, j), result in mm.action.items():
        moves.setdefault(g, []).append((i, j, result))

    def through(x: Generator, element: FreeElement):
        for m, (a, g2) in element:
            for m1, x2 in ma.act_basis(x, a):
                yield monomial_mul(m, m1), concat(x2, g2.x)

    basis, diff, action = [], {}, {}
    for x in ma.basis:
        for g in by_idem.get(x.image, []):
            glued = concat(x, g.x)
            terms = [(m, concat(x2, g.x)) for m, x2 in ma.diff[x]]
            terms.extend(through(x, mm.delta[g]))
            basis.append(glued)
            diff[glued] = FreeElement.sum(n, terms)
            for i, j, result in moves.get(g, []):
                value = FreeElement.sum(n, through(x, result))
                if value:
                    action[(glued, i, j)] = value
    basis.sort()
    part = glue(ma.part, mm.part)
    logger.info("Tensored %s with %s: %d generators", ma.name, mm.name, len(basis))
    return TypeAModule(part, basis, diff, action, name=f"{ma.name} (x) {mm.name}")


def tensor_DA_D(mm: MiddleModule, md: TypeDModule) -> TypeDModule:
    """CPDA (x) CPD as a type D structure over the left interface of the middle slab."""
    check_interface(mm.part, md.part)
    n = mm.n
    by_idem: Dict[frozenset, list] = {}
    for y in md.generators:
        by_idem.setdefault(md.idempotent_of(y), []).append(y)

    gens, delta = [], {}
    for g in mm.generators:
        for y in by_idem.get(g.right, []):
            glued = concat(g.x, y)
            terms = [(m, (a, concat(g2.x, y))) for m, (a, g2) in mm.delta[g]]
            for m2, (b, y2) in md.delta[y]:
                for m1, (a, g2) in mm.act(mm.unit(g), b):
                    terms.append((monomial_mul(m1, m2), (a, concat(g2.x, y2))))
            gens.append(glued)
            delta[glued] = FreeElement.sum(n, terms)
    gens.sort()
    part = glue(mm.part, md.part)
    logger.info("Tensored %s with %s: %d generators", mm.name, md.name, len(gens))
    return TypeDModule(part, gens, delta, name=f"{mm.name} (x) {md.name}")


def tensor_Aabs_DD(mabs: AbsorbingModule, dd: DDBimodule) -> TypeDModule:
    """
    CPA_abs (x) CPDD. The DD side supplies the coefficient in A_{N,k};
    its downward coefficient is absorbed by the right action on the slab.
    """
    part = mabs.part
    if dd.n != part.n or dd.k != part.col_lo:
        logger.error("Absorbing over cut %d with CPDD of k=%d", part.col_lo, dd.k)
        raise PairingError(
            f"CPDD over A_{{{dd.n},{dd.k}}} does not match a slab cut at {part.col_lo}"
        )
    n = part.n
    delta = {}
    for x in mabs.basis:
        s = frozenset(part.rows) - x.image
        unit = idempotent(n, s)
        terms = [(m, (unit, y)) for m, y in mabs.diff[x]]
        for m2, (r, r2) in dd.delta[s]:
            for m1, y in mabs.act(FreeElement.basis(n, x), r2):
                terms.append((monomial_mul(m1, m2), (r, y)))
        delta[x] = FreeElement.sum(n, terms)
    logger.info("Tensored %s with %s: %d generators", mabs.name, dd.name, len(mabs.basis))
    return TypeDModule(part, list(mabs.basis), delta, name=f"{mabs.name} (x) {dd.name}")
