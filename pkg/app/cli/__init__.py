from .gridfile import (
    GridParseError,
    parse_grid,
    read_grid,
    format_grid,
)
from .report import (
    Report,
    OK,
    FAIL,
)
from .suites import (
    random_diagrams,
    exhaustive_diagrams,
    diagram_properties,
    check_diagram,
    algebra_properties,
    relation_properties,
    tally,
    merge_profiles,
)
from .commands import (
    UsageError,
    build_parser,
    run,
    main,
)
