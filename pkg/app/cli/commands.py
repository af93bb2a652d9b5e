import argparse
import logging
import sys
import time
from dataclasses import asdict
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd

from ..bordered import (
    PairingError,
    cpa,
    cpa_abs,
    cpd,
    cpda,
    cpdd,
    pair_AD,
    tensor_A_DA,
    tensor_Aabs_DD,
    tensor_DA_D,
)
from ..complexes import GradedComplex, cfk_complex, cfp_complex
from ..config import Config
from ..grid import GridValidationError, sketch, slice_diagram, validate_planar, wrap
from ..homology import BidegreeWindow, GradingViolation, euler_characteristic, homology_dims
from ..strands import (
    InterfaceGradingData,
    StrandError,
    basis,
    basis_by_source,
    diff_basis,
    gradings_alg,
    mul_basis,
)
from ..util import configure_logging, run_tasks
from .gridfile import GridParseError, read_grid
from .report import Report
from .suites import (
    algebra_properties,
    check_diagram,
    exhaustive_diagrams,
    merge_profiles,
    random_diagrams,
    tally,
)


logger = logging.getLogger(__name__)

USAGE_ERRORS = (GridParseError, GridValidationError, PairingError, StrandError, OSError)


class UsageError(ValueError):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _cuts(args) -> List[int]:
    if getattr(args, "cut", None) is not None:
        return [args.cut]
    return list(getattr(args, "cuts", None) or [])


def _complex_rows(c: GradedComplex) -> List[dict]:
    return [
        {
            "generator": str(x),
            "A": c.grading[x][0],
            "mu": c.grading[x][1],
            "d": c.diff[x].format(),
        }
        for x in c.basis
    ]


def _verify_complex(report: Report, c: GradedComplex) -> None:
    d2 = c.d_squared_failures()
    bad = c.grading_failures()
    report.results["d_squared"] = "ok" if not d2 else f"fails on {d2[0]}"
    report.results["gradings"] = "ok" if not bad else f"fails on {bad[0][0]} -> {bad[0][1]}"
    if d2:
        report.fail(f"d^2 != 0 on {d2[0]}")
    if bad:
        report.fail(f"d{bad[0][0]} contains {bad[0][1]} of the wrong bidegree")


################################################################
# Commands


def cmd_complex(args, report: Report) -> None:
    d = read_grid(args.file)
    report.n = d.n
    with report.timed("build"):
        c = cfk_complex(wrap(d)) if args.toroidal else cfp_complex(d)
    rows = _complex_rows(c)
    report.results["kind"] = "toroidal" if args.toroidal else "planar"
    report.results["generators"] = len(c.basis)
    report.results["nonzero_rows"] = len(c.nonzero_rows())
    report.results["rows"] = rows
    _verify_complex(report, c)
    report.say(sketch(wrap(d) if args.toroidal else d))
    report.say()
    report.say(f"{c.name}: {len(c.basis)} generators, {len(c.nonzero_rows())} nonzero rows")
    report.table(pd.DataFrame(rows, columns=["generator", "A", "mu", "d"]).set_index("generator"))


def cmd_homology(args, report: Report) -> None:
    d = read_grid(args.file)
    report.n = d.n
    defaults = Config.HOMOLOGY["window"]
    window = BidegreeWindow(
        defaults["a_min"] if args.amin is None else args.amin,
        defaults["a_max"] if args.amax is None else args.amax,
        defaults["mu_min"] if args.mumin is None else args.mumin,
        defaults["mu_max"] if args.mumax is None else args.mumax,
    )
    with report.timed("build"):
        c = cfk_complex(wrap(d)) if args.toroidal else cfp_complex(d)
    with report.timed("homology"):
        hom = homology_dims(c, window)
    euler = euler_characteristic(hom)
    report.results["window"] = asdict(window)
    report.results["computed_window"] = asdict(hom.computed_window)
    report.results["dims"] = {f"{a},{mu}": dim for (a, mu), dim in hom.nonzero().items()}
    report.results["total"] = hom.total
    report.results["euler"] = {str(a): list(v) for a, v in euler.items()}
    report.say(f"homology of {c.name} over A in [{window.a_min},{window.a_max}], "
               f"mu in [{window.mu_min},{window.mu_max}]")
    report.table(hom.to_frame())
    report.say(f"total dimension: {hom.total}")


def cmd_slice(args, report: Report) -> None:
    d = read_grid(args.file)
    report.n = d.n
    cuts = _cuts(args)
    pieces = slice_diagram(d, cuts)
    report.results["cuts"] = cuts
    report.results["pieces"] = []
    for piece in pieces:
        count = factorial(d.n + 1) // factorial(d.n + 1 - piece.width)
        report.results["pieces"].append(
            {
                "kind": piece.kind.value,
                "columns": [piece.col_lo, piece.col_hi],
                "x": dict(piece.x_markers),
                "o": dict(piece.o_markers),
                "generators": count,
            }
        )
        report.say(f"{piece.kind.value} [{piece.col_lo},{piece.col_hi}): {count} generators")
        report.say(sketch(piece))
        report.say()


def _pair_pieces(pieces) -> Dict[str, GradedComplex]:
    first, middles, last = pieces[0], pieces[1:-1], pieces[-1]
    middle_modules = [cpda(m) for m in middles]
    ma = cpa(first)
    for mm in middle_modules:
        ma = tensor_A_DA(ma, mm)
    left_first = pair_AD(ma, cpd(last))
    md = cpd(last)
    for mm in reversed(middle_modules):
        md = tensor_DA_D(mm, md)
    right_first = pair_AD(cpa(first), md)
    if not middles:
        return {"pairing": left_first}
    return {"left association": left_first, "right association": right_first}


def cmd_pair(args, report: Report) -> None:
    d = read_grid(args.file)
    report.n = d.n
    cuts = _cuts(args)
    if not cuts:
        logger.error("pair called without cuts")
        raise UsageError("pair needs --cut or --cuts")
    pieces = slice_diagram(d, cuts)
    with report.timed("pair"):
        paired = _pair_pieces(pieces)
    report.results["cuts"] = cuts
    report.results["pairings"] = {}
    direct = None
    if args.verify:
        with report.timed("direct"):
            direct = cfp_complex(d)
    for label, c in paired.items():
        terms = sum(len(c.diff[x]) for x in c.basis)
        entry = {"generators": len(c.basis), "terms": terms}
        line = f"{label}: {len(c.basis)} generators, {terms} differential terms"
        if direct is not None:
            differences = c.differences(direct)
            entry["match"] = not differences
            if differences:
                entry["first_difference"] = differences[0]
                report.fail(f"{label} differs from the direct complex: {differences[0]}")
            else:
                line = f"{label}: EXACT MATCH ({len(c.basis)} generators, {terms} differential terms)"
        report.results["pairings"][label] = entry
        report.say(line)


def cmd_algebra(args, report: Report) -> None:
    n, k = args.n, args.k
    report.n = n
    elements = basis(n, k)
    report.results["k"] = k
    report.results["action"] = args.action
    if args.action == "basis":
        report.results["size"] = len(elements)
        report.results["elements"] = [str(f) for f in elements]
        report.say(f"B({n},{k}): {len(elements)} elements")
        report.lines.extend(str(f) for f in elements)
    elif args.action == "mult":
        by_source = basis_by_source(n, k)
        products = []
        for f in elements:
            for g in by_source.get(f.target, []):
                fg = mul_basis(f, g)
                if fg is not None:
                    products.append(f"{f} * {g} = {fg}")
        report.results["nonzero_products"] = len(products)
        report.results["products"] = products
        report.say(f"A({n},{k}): {len(products)} nonzero products of composable pairs")
        report.lines.extend(products)
    elif args.action == "diff":
        rows = {str(f): " + ".join(sorted(str(h) for h in diff_basis(f))) or "0" for f in elements}
        report.results["diff"] = rows
        report.lines.extend(f"d{f} = {dh}" for f, dh in rows.items())
    else:
        default = list(range(1, min(k, n) + 1))
        gd = InterfaceGradingData.of(
            args.lx if args.lx is not None else default,
            args.lo if args.lo is not None else default,
        )
        records = [dict(zip(("element", "A", "mu"), (str(f), *gradings_alg(f, gd)))) for f in elements]
        table = pd.DataFrame(records, columns=["element", "A", "mu"])
        report.results["l_x"] = sorted(gd.l_x)
        report.results["l_o"] = sorted(gd.l_o)
        report.results["gradings"] = records
        report.say(f"l_x = {sorted(gd.l_x)}, l_o = {sorted(gd.l_o)}")
        report.table(table.set_index("element"))


def cmd_dd(args, report: Report) -> None:
    d = read_grid(args.file) if args.file else None
    n = args.n
    if d is not None:
        if n is not None and n != d.n:
            logger.error("--n %d against a grid file with n=%d", n, d.n)
            raise UsageError(f"--n {n} does not match the grid file (n = {d.n})")
        n = d.n
    if n is None:
        logger.error("dd called without n")
        raise UsageError("dd needs --n or a grid file")
    report.n = n
    with report.timed("build"):
        dd = cpdd(n, args.k)
    failures = dd.d_squared_failures()
    report.results["k"] = args.k
    report.results["generators"] = len(dd.generators)
    report.results["basis"] = len(dd.basis())
    report.results["d_squared"] = "ok" if not failures else f"fails on {failures[0]}"
    report.say(f"CPDD over A({n},{args.k}) and A'({n},{dd.k_prime}): "
               f"{len(dd.generators)} generators, {len(dd.basis())} basis elements")
    if failures:
        report.fail(f"d^2 != 0 on {failures[0]}")
    if d is None:
        return
    if not 1 <= args.k <= n:
        logger.error("Absorption cut %d outside 1..%d", args.k, n)
        raise UsageError(f"the absorption check needs a cut in 1..{n}, got {args.k}")
    _, d_part = slice_diagram(d, [args.k])
    with report.timed("absorb"):
        absorbed = tensor_Aabs_DD(cpa_abs(d_part), dd)
    differences = absorbed.differences(cpd(d_part))
    report.results["absorption"] = "match" if not differences else differences[0]
    if differences:
        report.fail(f"absorption differs from CPD: {differences[0]}")
    else:
        report.say("absorption: EXACT MATCH")


def cmd_check(args, report: Report) -> None:
    if args.exhaustive is not None:
        n = args.exhaustive
        limit = Config.CHECK["max_exhaustive_n"]
        if n > limit:
            logger.error("Exhaustive check asked for n=%d above %d", n, limit)
            raise UsageError(f"--exhaustive is limited to n <= {limit}")
        keys = list(exhaustive_diagrams(n))
        mode = "exhaustive"
    else:
        n = args.random
        keys = random_diagrams(n, args.count, args.seed)
        mode = "random"
    if n < 1:
        logger.error("Check asked for n=%d", n)
        raise UsageError(f"n must be positive, got {n}")
    report.n = n
    deep = args.deep
    with report.timed("diagrams"):
        outputs = run_tasks(check_diagram, [(key, deep) for key in keys])
    outcome_lists = [out["outcomes"] for out in outputs]
    if args.algebra:
        with report.timed("algebra"):
            outcome_lists.append(algebra_properties(n, args.seed, deep=n <= 3))
    table = tally(outcome_lists, Config.CHECK["witness_limit"])
    report.results["mode"] = mode
    report.results["instances"] = len(keys)
    report.results["seed"] = args.seed if mode == "random" else None
    report.results["properties"] = table
    report.results["cancellation"] = merge_profiles(out["profile"] for out in outputs)

    frame = pd.DataFrame(
        [(name, row["passed"], row["failed"]) for name, row in table.items()],
        columns=["property", "passed", "failed"],
    )
    report.say(f"{mode} check, n = {n}, {len(keys)} diagrams")
    report.table(frame.set_index("property") if not frame.empty else frame)
    for name, row in table.items():
        for w in row["witnesses"]:
            report.fail(f"{name}: {w}")


def cmd_bench(args, report: Report) -> None:
    n = args.n or Config.BENCH["n"]
    seed = Config.BENCH["seed"] if args.seed is None else args.seed
    repeat = args.repeat or Config.BENCH["repeat"]
    report.n = n
    report.record_timings = True
    _, sx, so = random_diagrams(n, 1, seed)[0]
    d = validate_planar(n, sx, so)
    report.results["diagram"] = {"x": list(sx), "o": list(so)}

    def best(fn: Callable[[], object]):
        times, value = [], None
        for _ in range(repeat):
            start = time.perf_counter()
            value = fn()
            times.append((time.perf_counter() - start) * 1000)
        return value, round(min(times), 3)

    direct, direct_ms = best(lambda: cfp_complex(d))
    report.timings_ms["direct"] = direct_ms
    rows = []
    for k in range(1, n + 1):
        a_part, d_part = slice_diagram(d, [k])
        (ma, md), build_ms = best(lambda: (cpa(a_part), cpd(d_part)))
        paired, pair_ms = best(lambda: pair_AD(ma, md))
        expected = factorial(n + 1) // factorial(n + 1 - k)
        match = not paired.differences(direct)
        rows.append(
            {
                "cut": k,
                "type_a": len(ma.basis),
                "expected_type_a": expected,
                "type_d": len(md.generators),
                "paired": len(paired.basis),
                "direct": len(direct.basis),
                "build_ms": build_ms,
                "pair_ms": pair_ms,
                "match": match,
            }
        )
        report.timings_ms[f"cut {k}"] = round(build_ms + pair_ms, 3)
        if len(ma.basis) != expected or len(direct.basis) != factorial(n + 1) or not match:
            report.fail(f"cut {k}: counts or pairing do not agree")
    frame = pd.DataFrame(rows)
    report.results["rows"] = [
        {key: value for key, value in row.items() if not key.endswith("_ms")} for row in rows
    ]
    report.say(f"bench n = {n}, seed = {seed}, x = {list(sx)}, o = {list(so)}")
    report.say(f"direct: {len(direct.basis)} generators in {direct_ms} ms")
    report.table(frame.set_index("cut"))


################################################################
# Parser


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit one JSON document")
    common.add_argument("--timings", action="store_true", help="Record wall-clock timings")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    return common


def _add_cuts(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--cut", type=int, help="Single cut k")
    group.add_argument("--cuts", type=_int_list, help="Ascending cuts, e.g. 1,3")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(
        prog="gridslice",
        description="Planar grid complexes, their slicings and bordered pairings",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("complex", parents=[common], help="Differential table of a grid diagram")
    s.add_argument("file", help="Grid file")
    s.add_argument("--toroidal", action="store_true", help="Use the toroidal complex")
    s.set_defaults(func=cmd_complex)

    s = sub.add_parser("homology", parents=[common], help="Bigraded homology dimensions")
    s.add_argument("file", help="Grid file")
    s.add_argument("--toroidal", action="store_true", help="Use the toroidal complex")
    s.add_argument("--amin", type=int)
    s.add_argument("--amax", type=int)
    s.add_argument("--mumin", type=int)
    s.add_argument("--mumax", type=int)
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("slice", parents=[common], help="Cut a diagram into slabs")
    s.add_argument("file", help="Grid file")
    _add_cuts(s)
    s.set_defaults(func=cmd_slice)

    s = sub.add_parser("pair", parents=[common], help="Tensor the slabs back together")
    s.add_argument("file", help="Grid file")
    _add_cuts(s)
    s.add_argument("--verify", action="store_true", help="Compare with the direct complex")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("algebra", parents=[common], help="Inspect the strand algebra A(n,k)")
    s.add_argument("action", choices=["basis", "mult", "diff", "gradings"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--lx", type=_int_list, help="X heights for gradings, e.g. 1,2")
    s.add_argument("--lo", type=_int_list, help="O heights for gradings")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("dd", parents=[common], help="Build CPDD and check absorption")
    s.add_argument("file", nargs="?", help="Grid file for the absorption check")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_dd)

    s = sub.add_parser("check", parents=[common], help="Run the property suites")
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--random", type=int, metavar="N", help="Random diagrams of size N")
    group.add_argument("--exhaustive", type=int, metavar="N", help="Every diagram of size N")
    s.add_argument("--count", type=int, default=Config.CHECK["count"])
    s.add_argument("--seed", type=int, default=Config.CHECK["seed"])
    s.add_argument("--deep", action="store_true", help="Also check module associativity and Leibniz")
    s.add_argument("--algebra", action="store_true", help="Also run the algebra suite for N")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bench", parents=[common], help="Direct against sliced computation")
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--repeat", type=int)
    s.set_defaults(func=cmd_bench)
    return p


def _execute(args) -> Report:
    report = Report(command=args.command, record_timings=args.timings)
    try:
        args.func(args, report)
    except GradingViolation as error:
        report.fail(str(error))
    return report


def run(command: str, args: Sequence[str] = ()) -> Report:
    """Run one command with its argument list and return the filled report.

    Usage and parse errors propagate to the caller.
    """
    return _execute(build_parser().parse_args([command, *args]))


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = {0: None, 1: "INFO"}.get(args.verbose, "DEBUG")
    configure_logging(level)

    try:
        report = _execute(args)
    except (UsageError,) + USAGE_ERRORS as error:
        logger.info("%s stopped: %s", args.command, error)
        print(f"gridslice {args.command}: {error}", file=sys.stderr)
        return 2
    print(report.render(args.json))
    return report.exit_code
