from .element import (
    Monomial,
    FreeElement,
    Term,
    DimensionError,
    monomial_mul,
    element_add,
    element_scale,
)
