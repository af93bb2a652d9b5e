"""
The grid file format:

    grid v1
    # comments and blank lines are ignored
    n = 2
    x = 1 2
    o = 2 1

`x` and `o` list sigma_X(1..n) and sigma_O(1..n) in one-line notation.
"""

import logging
from pathlib import Path
from typing import Dict, List, Tuple

from ..config import Config
from ..grid import PlanarGridDiagram, validate_planar


logger = logging.getLogger(__name__)


class GridParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _permutation(key: str, value: str, n: int, line: int) -> List[int]:
    try:
        values = [int(v) for v in value.replace(",", " ").split()]
    except ValueError:
        logger.error("Non-integer entry in %s at line %d: %s", key, line, value)
        raise GridParseError(line, f"{key} must be a list of integers, got {value!r}")
    if len(values) != n:
        logger.error("%s has %d entries at line %d, expected %d", key, len(values), line, n)
        raise GridParseError(line, f"{key} has {len(values)} entries, expected n = {n}")
    out_of_range = [i + 1 for i, v in enumerate(values) if not 1 <= v <= n]
    if out_of_range:
        logger.error("%s entries out of range at line %d: %s", key, line, out_of_range)
        raise GridParseError(line, f"{key} entries at positions {out_of_range} are outside 1..{n}")
    seen: Dict[int, int] = {}
    for i, v in enumerate(values, start=1):
        if v in seen:
            logger.error("%s repeats %d at line %d", key, v, line)
            raise GridParseError(
                line, f"{key} is not injective: positions {seen[v]} and {i} both map to {v}"
            )
        seen[v] = i
    return values


def parse_grid(text: str) -> PlanarGridDiagram:
    """
    Read a grid file.

    Args:
        text: Contents of the file, LF or CRLF.

    Returns:
        The validated diagram.

    Raises:
        GridParseError: On a syntax error, with its 1-based line.
        GridValidationError: If x or o do not describe permutations.
    """
    header = Config.GRID_FILE["header"]
    fields: Dict[str, Tuple[int, str]] = {}
    seen_header = False
    last = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        last = number
        line = _strip(raw.lstrip("\ufeff"))
        if not line:
            continue
        if not seen_header:
            if " ".join(line.split()) != header:
                logger.error("Bad header at line %d: %s", number, line)
                raise GridParseError(number, f"expected the header {header!r}, got {line!r}")
            seen_header = True
            continue
        if "=" not in line:
            logger.error("No key at line %d: %s", number, line)
            raise GridParseError(number, f"expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in ("n", "x", "o"):
            logger.error("Unknown key at line %d: %s", number, key)
            raise GridParseError(number, f"unknown key {key!r}")
        if key in fields:
            logger.error("Duplicate key at line %d: %s", number, key)
            raise GridParseError(number, f"{key} is given twice")
        fields[key] = (number, value)

    if not seen_header:
        logger.error("Grid file has no header")
        raise GridParseError(max(last, 1), f"missing the header {header!r}")
    for key in ("n", "x", "o"):
        if key not in fields:
            logger.error("Grid file misses %s", key)
            raise GridParseError(max(last, 1), f"missing '{key} = ...'")

    n_line, n_value = fields["n"]
    try:
        n = int(n_value)
    except ValueError:
        logger.error("Non-integer n at line %d: %s", n_line, n_value)
        raise GridParseError(n_line, f"n must be an integer, got {n_value!r}")
    if n < 1:
        logger.error("Non-positive n at line %d: %d", n_line, n)
        raise GridParseError(n_line, f"n must be positive, got {n}")
    sigma_x = _permutation("x", fields["x"][1], n, fields["x"][0])
    sigma_o = _permutation("o", fields["o"][1], n, fields["o"][0])
    return validate_planar(n, sigma_x, sigma_o)


def read_grid(path) -> PlanarGridDiagram:
    raw = Path(path).read_bytes()
    encoding = Config.GRID_FILE["encoding"]
    try:
        text = raw.decode(encoding)
    except UnicodeDecodeError as error:
        line = raw[: error.start].count(b"\n") + 1
        logger.error("%s is not %s at line %d", path, encoding, line)
        raise GridParseError(line, f"not valid {encoding}: {error.reason}") from error
    return parse_grid(text)


def format_grid(d: PlanarGridDiagram) -> str:
    return "\n".join(
        [
            Config.GRID_FILE["header"],
            f"n = {d.n}",
            "x = " + " ".join(str(v) for v in d.sigma_x),
            "o = " + " ".join(str(v) for v in d.sigma_o),
            "",
        ]
    )
