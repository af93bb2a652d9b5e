from .diagram import (
    GridValidationError,
    SlabKind,
    PlanarGridDiagram,
    ToroidalGridDiagram,
    PartialDiagram,
    validate_planar,
    validate_toroidal,
    wrap,
    unwrap,
    make_partial,
    empty_middle,
    slice_diagram,
    glue,
    glue_all,
)
from .generator import (
    Generator,
    concat,
    split,
    generators,
    toroidal_generators,
)
from .region import (
    Region,
    RegionKind,
    Chord,
    lower_left_count,
    count_markers,
    planar_rect,
    rectangles_from,
    toroidal_rects,
    half_strip_left_edge,
    half_strip_right_edge,
    left_half_strips_from,
    right_half_strips_from,
    strip,
)
from .sketch import sketch
