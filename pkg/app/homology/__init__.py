from .gf2 import (
    f2_rank,
    pack_rows,
    packed_rank,
)
from .homology import (
    BidegreeWindow,
    HomologyReport,
    GradingViolation,
    bigraded_basis,
    check_gradings,
    homology_dims,
    euler_characteristic,
    presentation_dims,
)
