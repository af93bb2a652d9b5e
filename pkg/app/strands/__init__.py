from .element import (
    StrandBasisElement,
    StrandError,
    FactorizationError,
    basis,
    mirrored_basis,
    basis_by_source,
    basis_by_target,
    cross,
    rho,
    rho_down,
    idempotent,
    reverse,
    mirror,
)
from .algebra import (
    Factor,
    mul_basis,
    diff_basis,
    algebra_mul,
    algebra_diff,
    as_element,
    relation_diff,
    factorize,
    factor_element,
)
from .gradings import (
    InterfaceGradingData,
    gradings_alg,
)
