"""
permstats command line.

    permstats stats 342516
    permstats contains 4213657 --patterns "321; 231|(1,0)"
    permstats avoiders --n 7 --patterns "132|(2,0)" --des-equals 2
    permstats poly --min-n 4 --max-n 8 --patterns "1243|(1,0)(1,1)(1,2)(1,3)(1,4)" --format csv
    permstats bijection mu --perm 1,4,2,6,3,5,7,10,8,9
    permstats sort 3241 --times 2
    permstats dihedral R180 342516
    permstats verify table1 prop3.5 --max-n 8

Results go to stdout; logs, progress bars and errors go to stderr.
Exit codes: 0 success, 1 failed verification, 2 bad usage or input.
"""

import argparse
import json
import logging
import sys

import pandas as pd
from pydantic import BaseModel, ValidationError

from . import logger_config
from . import poly_table
from . import settings_manager
from . import verify_runner
from .bijections import (
    MotzkinPath,
    SetPartition,
    alpha_24_to_23,
    alpha_31_to_23,
    avoider_from_motzkin,
    avoider_from_partition,
    beta_23_to_31,
    motzkin_from_avoider,
    partition_from_avoider,
)
from .enumeration import AvoidanceQuery, avoiders, stat_polynomial
from .patterns import contains, parse_pattern_set
from .perm_core import (
    DihedralElement,
    Permutation,
    StatKind,
    Word,
    apply_dihedral,
    apply_dihedral_relative,
    descent_bottoms,
    descent_set,
    descent_tops,
    stat_vector,
)
from .stack_sorting import sortability_index, stack_sort_power

logger = logger_config.get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

FORMATS = ("text", "json", "csv")

# name -> (input flag, function)
BIJECTIONS = {
    "mu": ("perm", motzkin_from_avoider),
    "mu-inverse": ("path", avoider_from_motzkin),
    "partition": ("perm", partition_from_avoider),
    "partition-inverse": ("partition", avoider_from_partition),
    "alpha": ("perm", alpha_31_to_23),
    "beta": ("perm", beta_23_to_31),
    "alpha24": ("perm", alpha_24_to_23),
}


class StatsRecord(BaseModel):
    perm: str
    des: int
    inv: int
    maj: int
    exc: int
    descent_set: list[int]
    descent_tops: list[int]
    descent_bottoms: list[int]


def _braces(values) -> str:
    return "{" + ",".join(map(str, sorted(values))) + "}"


def _write(text: str) -> None:
    sys.stdout.write(text)


# -- commands ----------------------------------------------------------------

def cmd_stats(args) -> int:
    sigma = Permutation.parse(args.perm)
    values = stat_vector(sigma)
    record = StatsRecord(
        perm=str(sigma),
        **{kind.value: value for kind, value in values.items()},
        descent_set=sorted(descent_set(sigma)),
        descent_tops=sorted(descent_tops(sigma)),
        descent_bottoms=sorted(descent_bottoms(sigma)),
    )
    if args.format == "json":
        _write(record.model_dump_json() + "\n")
    else:
        _write(f"des={record.des} inv={record.inv} maj={record.maj} exc={record.exc}\n")
        _write(
            f"Des={_braces(record.descent_set)} Destop={_braces(record.descent_tops)} "
            f"Desbot={_braces(record.descent_bottoms)}\n"
        )
    return EXIT_OK


def cmd_contains(args) -> int:
    sigma = Permutation.parse(args.perm)
    patterns = parse_pattern_set(args.patterns)
    rows = [(str(item), contains(sigma, item)) for item in patterns]
    if args.format == "json":
        _write(json.dumps([{"pattern": p, "contains": c} for p, c in rows]) + "\n")
    else:
        for pattern, found in rows:
            _write(f"{pattern}: {'contains' if found else 'avoids'}\n")
    return EXIT_OK


def cmd_avoiders(args) -> int:
    query = AvoidanceQuery(args.n, parse_pattern_set(args.patterns), StatKind.DES, args.des_equals)
    found = avoiders(query, args.jobs)
    if args.format == "json":
        _write(json.dumps([str(sigma) for sigma in found]) + "\n")
    elif args.format == "csv":
        frame = pd.DataFrame({"perm": [str(sigma) for sigma in found]})
        _write(frame.to_csv(index=False, lineterminator="\n"))
    else:
        _write("".join(f"{sigma}\n" for sigma in found))
    logger.info(f"[CLI] {len(found)} avoider(s) of length {args.n}")
    return EXIT_OK


def _n_range(args, parser) -> range:
    if args.n is not None:
        if args.min_n is not None or args.max_n is not None:
            parser.error("--n cannot be combined with --min-n/--max-n")
        return range(args.n, args.n + 1)
    if args.max_n is None:
        parser.error("poly needs --n or --max-n")
    low = 0 if args.min_n is None else args.min_n
    if low > args.max_n:
        parser.error(f"--min-n {low} exceeds --max-n {args.max_n}")
    return range(low, args.max_n + 1)


def cmd_poly(args, parser) -> int:
    patterns = parse_pattern_set(args.patterns)
    kind = StatKind(args.stat)
    records = [
        poly_table.PolynomialRecord.from_poly(n, kind, str(patterns), stat_polynomial(n, patterns, kind, args.jobs))
        for n in _n_range(args, parser)
    ]
    _write(poly_table.render(records, args.format))
    return EXIT_OK


def cmd_bijection(args, parser) -> int:
    flag, fn = BIJECTIONS[args.name]
    raw = getattr(args, flag)
    if raw is None:
        parser.error(f"bijection {args.name} needs --{flag}")
    if flag == "perm":
        value = Permutation.parse(raw)
    elif flag == "path":
        value = MotzkinPath.parse(raw)
    else:
        value = SetPartition.parse(raw)
    result = fn(value)
    if args.format == "json":
        _write(json.dumps({"map": args.name, "input": str(value), "output": str(result)}) + "\n")
    else:
        _write(f"{result}\n")
    return EXIT_OK


def cmd_sort(args) -> int:
    sigma = Permutation.parse(args.perm)
    result = stack_sort_power(sigma, args.times)
    index = sortability_index(sigma)
    if args.format == "json":
        _write(
            json.dumps({"perm": str(sigma), "times": args.times, "result": str(result), "sortability_index": index})
            + "\n"
        )
    else:
        _write(f"{result}\n")
        _write(f"sortability_index={index}\n")
    return EXIT_OK


def cmd_dihedral(args) -> int:
    element = DihedralElement.parse(args.element)
    if args.relative:
        result = apply_dihedral_relative(element, Word.parse(args.perm))
    else:
        result = apply_dihedral(element, Permutation.parse(args.perm))
    _write(f"{result}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(verify_runner.CHECK_NAMES) if "all" in args.checks else args.checks
    checks = [verify_runner.VerifyCheck.with_default_bound(name, args.max_n) for name in names]
    report = verify_runner.run_checks(checks, args.jobs, show_progress=sys.stderr.isatty())
    if args.format == "json":
        _write(verify_runner.render_json(report, args.timings))
    else:
        verify_runner.render_text(report, args.timings)
    if args.save_report:
        verify_runner.save_report(report)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


# -- parser ------------------------------------------------------------------

def _add_format(p, choices=FORMATS) -> None:
    default = settings_manager.get_setting("default_format", "text")
    if default not in choices:
        default = "text"
    p.add_argument("--format", choices=choices, default=default, help="Output format")


def _add_jobs(p) -> None:
    p.add_argument("--jobs", type=int, default=None, help="Worker processes (default: PERMSTATS_JOBS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permstats",
        description="Permutation statistics, pattern avoidance and descent polynomials",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Show info logs on stderr")
    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # Stats command
    stats_parser = subparsers.add_parser("stats", help="des, inv, maj and exc of a permutation")
    stats_parser.add_argument("perm", help="Permutation, e.g. 342516 or 1,4,2,10,...")
    _add_format(stats_parser, ("text", "json"))

    # Contains command
    contains_parser = subparsers.add_parser("contains", help="Test a permutation against each pattern")
    contains_parser.add_argument("perm", help="Host permutation")
    contains_parser.add_argument("--patterns", required=True, help='Pattern set, e.g. "321; 231|(1,0)"')
    _add_format(contains_parser, ("text", "json"))

    # Avoiders command
    avoiders_parser = subparsers.add_parser("avoiders", help="List Av_n of a pattern set")
    avoiders_parser.add_argument("--n", type=int, required=True, help="Permutation length")
    avoiders_parser.add_argument("--patterns", default="", help="Pattern set (empty: all of S_n)")
    avoiders_parser.add_argument("--des-equals", type=int, default=None, help="Keep only this many descents")
    _add_jobs(avoiders_parser)
    _add_format(avoiders_parser)

    # Poly command
    poly_parser = subparsers.add_parser("poly", help="Statistic polynomial of an avoidance class")
    poly_parser.add_argument("--n", type=int, default=None, help="Single length")
    poly_parser.add_argument("--min-n", type=int, default=None, help="First length of a table (default 0)")
    poly_parser.add_argument("--max-n", type=int, default=None, help="Last length of a table")
    poly_parser.add_argument("--stat", choices=[k.value for k in StatKind], default="des", help="Statistic")
    poly_parser.add_argument("--patterns", default="", help="Pattern set (empty: all of S_n)")
    _add_jobs(poly_parser)
    _add_format(poly_parser)

    # Bijection command
    bijection_parser = subparsers.add_parser("bijection", help="Apply one of the class bijections")
    bijection_parser.add_argument("name", choices=list(BIJECTIONS), help="Map to apply")
    bijection_parser.add_argument("--perm", help="Input permutation")
    bijection_parser.add_argument("--path", help="Input Motzkin path, e.g. HUUDHD")
    bijection_parser.add_argument("--partition", help="Input set partition, e.g. {{1,3},{2}}")
    _add_format(bijection_parser, ("text", "json"))

    # Sort command
    sort_parser = subparsers.add_parser("sort", help="Apply the stack-sorting operator")
    sort_parser.add_argument("perm", help="Permutation to sort")
    sort_parser.add_argument("--times", type=int, default=1, help="Number of passes")
    _add_format(sort_parser, ("text", "json"))

    # Dihedral command
    dihedral_parser = subparsers.add_parser("dihedral", help="Apply a plot symmetry")
    dihedral_parser.add_argument("element", help="R0, R90, R180, R270, r0, r1, r-1 or rinf")
    dihedral_parser.add_argument("perm", help="Permutation (or word with --relative)")
    dihedral_parser.add_argument(
        "--relative", action="store_true", help="Act relative to the letter set of a word"
    )

    # Verify command
    verify_parser = subparsers.add_parser("verify", help="Run named verification checks")
    verify_parser.add_argument(
        "checks", nargs="+", choices=list(verify_runner.CHECK_NAMES) + ["all"], help="Checks to run"
    )
    verify_parser.add_argument("--max-n", type=int, default=None, help="Override every check's bound")
    verify_parser.add_argument("--save-report", action="store_true", help="Write the JSON report to PERMSTATS_REPORT_DIR")
    verify_parser.add_argument("--timings", action="store_true", help="Include wall times in the output")
    _add_jobs(verify_parser)
    _add_format(verify_parser, ("text", "json"))

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        logger_config.set_console_level(logging.INFO)

    try:
        if args.command == "stats":
            return cmd_stats(args)
        elif args.command == "contains":
            return cmd_contains(args)
        elif args.command == "avoiders":
            return cmd_avoiders(args)
        elif args.command == "poly":
            return cmd_poly(args, parser)
        elif args.command == "bijection":
            return cmd_bijection(args, parser)
        elif args.command == "sort":
            return cmd_sort(args)
        elif args.command == "dihedral":
            return cmd_dihedral(args)
        elif args.command == "verify":
            return cmd_verify(args)
        else:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        logger.debug(f"[CLI] rejected arguments: {message}")
        print(f"error: {message}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        # every library error derives from ValueError
        logger.debug(f"[CLI] {args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
