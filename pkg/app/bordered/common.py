import logging
from typing import Callable, FrozenSet, Hashable, Iterable, Tuple

from ..coeffs import FreeElement, monomial_mul
from ..complexes import left_completion
from ..grid import PartialDiagram, SlabKind
from ..strands import InterfaceGradingData, StrandBasisElement, diff_basis, factorize, mul_basis


logger = logging.getLogger(__name__)


class PairingError(ValueError):
    pass


def check_interface(left: PartialDiagram, right: PartialDiagram) -> None:
    if left.n != right.n:
        logger.error("Pairing slabs of n=%d and n=%d", left.n, right.n)
        raise PairingError(f"Slabs have different n: {left.n} vs {right.n}")
    if not left.has_right_interface or not right.has_left_interface:
        logger.error("Pairing %s with %s", left.kind, right.kind)
        raise PairingError(f"Cannot pair a {left.kind.value} slab with a {right.kind.value} slab")
    if left.col_hi != right.col_lo:
        logger.error("Interfaces %d and %d do not match", left.col_hi, right.col_lo)
        raise PairingError(f"Interface mismatch: {left.col_hi} vs {right.col_lo}")


def left_multiply(a: StrandBasisElement, element: FreeElement) -> FreeElement:
    """a * sum(U^m b (x) g) for an element with (strand, generator) tags."""
    terms = []
    for m, (b, g) in element:
        product = mul_basis(a, b)
        if product is not None:
            terms.append((m, (product, g)))
    return FreeElement.sum(element.n, terms)


def differentiate_coefficients(element: FreeElement) -> FreeElement:
    """sum of d(a) (x) g over the terms a (x) g."""
    return FreeElement.sum(
        element.n, ((m, (b, g)) for m, (a, g) in element for b in diff_basis(a))
    )


def scaled(monomial, element: FreeElement, relabel=None) -> Iterable[Tuple]:
    relabel = relabel or (lambda tag: tag)
    for m, tag in element:
        yield monomial_mul(monomial, m), relabel(tag)


def type_a_grading_data(part: PartialDiagram) -> InterfaceGradingData:
    """Heights of the slab's own markers: all of them lie left of its interface."""
    return InterfaceGradingData.of(part.x_map.values(), part.o_map.values())


def type_d_grading_data(part: PartialDiagram) -> InterfaceGradingData:
    """Heights left of a type D slab: the marker rows it does not use."""
    x_rows, o_rows = left_completion(part)
    return InterfaceGradingData.of(x_rows, o_rows)


def middle_grading_data(part: PartialDiagram) -> Tuple[InterfaceGradingData, InterfaceGradingData]:
    """
    Grading data on the left and right interfaces of a middle slab, taken
    from the canonical left completion.
    """
    if part.kind is not SlabKind.MIDDLE:
        logger.error("Middle grading data asked for a %s slab", part.kind.value)
        raise PairingError(f"Expected a middle slab, got {part.kind.value}")
    x_rows, o_rows = left_completion(part)
    left = InterfaceGradingData.of(x_rows, o_rows)
    right = InterfaceGradingData.of(
        list(x_rows) + list(part.x_map.values()),
        list(o_rows) + list(part.o_map.values()),
    )
    return left, right


def sort_key(tag: Hashable):
    return str(tag)


def act_through_factors(
    element: FreeElement,
    f: StrandBasisElement,
    right_idempotent: Callable[[Hashable], FrozenSet[int]],
    act_move: Callable[[Hashable, int, int], FreeElement],
) -> FreeElement:
    """
    element * f for a right action given on single-strand moves: terms whose
    right idempotent differs from the source of f vanish, the rest are moved
    one factor of f at a time.
    """
    current = FreeElement.sum(
        element.n, ((m, g) for m, g in element if right_idempotent(g) == f.source)
    )
    for _, i, j in factorize(f):
        current = FreeElement.sum(
            element.n, (t for m, g in current for t in scaled(m, act_move(g, i, j)))
        )
    return current
