from .graded import (
    GradedComplex,
    Bigrading,
)
from .gradings import (
    GradingError,
    planar_gradings,
    toroidal_gradings,
    partial_gradings,
    left_completion,
)
from .planar import (
    cfp_complex,
    cfk_complex,
)
