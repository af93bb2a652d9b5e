from .common import (
    PairingError,
    type_a_grading_data,
    type_d_grading_data,
    middle_grading_data,
)
from .type_a import (
    TypeAModule,
    cpa,
    cpa_act_rho,
    cpa_act_basis,
)
from .type_d import (
    TypeDModule,
    cpd,
    cancellation_profile,
)
from .middle import (
    MiddleGenerator,
    MiddleModule,
    middle_generator,
    cpda,
)
from .dd import (
    DDBimodule,
    AbsorbingModule,
    cpdd,
    cpa_abs,
)
from .pairing import (
    pair_AD,
    tensor_A_DA,
    tensor_DA_D,
    tensor_Aabs_DD,
)
