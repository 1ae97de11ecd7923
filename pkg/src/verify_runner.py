"""
Named verification checks.

Each check recomputes a family of exact identities (polynomial tables, reference
sequences, bijection round trips) up to a bound ``max_n`` and records the first
counterexample it meets. The runner collects the results into a RunReport that
can be printed (text/json) or saved next to earlier runs.
"""

import sys
import time
from dataclasses import dataclass, field
from datetime import datetime
from itertools import permutations
from pathlib import Path
from typing import Callable, Literal, get_args

from pydantic import BaseModel, Field, model_validator
from rich.console import Console
from rich.progress import BarColumn, Progress, TextColumn, TimeRemainingColumn
from rich.table import Table

from . import config
from . import logger_config
from . import settings_manager
from .bijections import (
    MOTZKIN_CLASS,
    RUNS_PATTERN,
    SHADED_2314,
    SHADED_2413,
    SHADED_3124,
    MotzkinPath,
    SetPartition,
    alpha_audit,
    avoider_from_motzkin,
    avoider_from_partition,
    motzkin_from_avoider,
    partition_from_avoider,
)
from .enumeration import AvoidanceQuery, avoiders, stat_polynomial
from .patterns import (
    ClassicalPattern,
    PatternSet,
    contains,
    enclosed_diagonals,
    is_superfluous,
    meshes_without_enclosed_diagonal,
    parse_pattern,
    parse_pattern_set,
)
from .perm_core import Permutation, StatKind, _des
from .qpoly import QPolynomial
from .sequences import (
    bona_w2_poly,
    catalan,
    eulerian_poly,
    motzkin_count,
    narayana,
    q_factorial,
    stirling2,
    west_two_sortable_count,
)
from .stack_sorting import WEST_TWO_PARTNER, WEST_TWO_SORTABLE, is_west_t_stack_sortable

logger = logger_config.get_logger(__name__)

CheckName = Literal[
    "prop3.1",
    "thm3.2",
    "prop3.3",
    "thm3.4",
    "prop3.5",
    "table1",
    "conj4.1",
    "conj4.2",
    "w2-sortable",
    "sanity",
]
CHECK_NAMES: tuple[str, ...] = get_args(CheckName)

REPORT_FILENAME = "verify_report.json"

# Column 1 fully shaded on a length-4 base
COLUMN_ONE_MESH = "|(1,0)(1,1)(1,2)(1,3)(1,4)"
FIRST_FAMILY = ("1243", "3412")
SECOND_FAMILY = ("1342", "2413")
TABULATED_ROWS = {
    4: ((1, 10, 11, 1), (1, 10, 11, 1)),
    5: ((1, 20, 57, 26, 1), (1, 20, 56, 26, 1)),
    6: ((1, 35, 204, 252, 57, 1), (1, 35, 196, 241, 57, 1)),
    7: ((1, 56, 581, 1500, 969, 120, 1), (1, 56, 546, 1361, 897, 120, 1)),
    8: ((1, 84, 1414, 6588, 9117, 3426, 247, 1), (1, 84, 1302, 5675, 7739, 3060, 247, 1)),
}

ONE_DIAGONAL = ("132|(2,0)", "132|(0,0)(1,1)", "132|(1,3)(2,2)(3,1)")
NO_DIAGONAL = (
    "132|(2,2)",
    "132|(0,1)",
    "132|(1,1)(1,2)",
    "132|(1,1)(1,2)(2,1)(2,2)",
    "132|(0,1)(1,1)(2,1)(3,1)",
)
# mesh-vs-classical set comparisons stay at this size regardless of max_n
MESH_SET_BOUND = 7
SUPERFLUOUS_SWEEP_BOUND = 6
SUPERFLUOUS_SWEEP_BOXES = 2

PARTITION_EXAMPLES = (
    ("3427156", "{{3,4},{2,7},{1,5,6}}"),
    ("5267134", "{{5},{2,6,7},{1,3,4}}"),
)
MOTZKIN_EXAMPLE = ("1,4,2,6,3,5,7,10,8,9", "HUUDHDHUHD")

BARRED_ITEMS = ("1'2'43", "1'324'")
AUDIT_BOUND = 7


class VerifyCheck(BaseModel):
    name: CheckName
    max_n: int = Field(ge=2)

    @classmethod
    def with_default_bound(cls, name: str, max_n: int | None = None) -> "VerifyCheck":
        return cls(name=name, max_n=settings_manager.default_max_n(name) if max_n is None else max_n)


class CheckResult(BaseModel):
    name: CheckName
    status: Literal["pass", "fail"]
    max_n: int
    n_min: int | None = None
    n_max: int | None = None
    counterexample: str | None = None
    notes: list[str] = Field(default_factory=list)
    deviations: list[str] = Field(default_factory=list)
    wall_time_s: float | None = None

    @model_validator(mode="after")
    def _fail_needs_counterexample(self):
        if self.status == "fail" and not self.counterexample:
            raise ValueError(f"check {self.name} failed without a counterexample")
        return self


class ReportSummary(BaseModel):
    checks_run: int = 0
    passed: int = 0
    failed: int = 0


class RunReport(BaseModel):
    last_run: str | None = None
    summary: ReportSummary = Field(default_factory=ReportSummary)
    details: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.summary.failed == 0

    def add(self, result: CheckResult) -> None:
        self.details.append(result)
        self.summary.checks_run += 1
        if result.status == "pass":
            self.summary.passed += 1
        else:
            self.summary.failed += 1


@dataclass
class _Findings:
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)
    deviations: list[str] = field(default_factory=list)
    n_min: int | None = None
    n_max: int | None = None

    @property
    def failed(self) -> bool:
        return self.counterexample is not None

    def cover(self, n: int) -> None:
        self.n_min = n if self.n_min is None else min(self.n_min, n)
        self.n_max = n if self.n_max is None else max(self.n_max, n)

    def fail(self, text: str) -> None:
        if self.counterexample is None:
            self.counterexample = text

    def deviate(self, text: str) -> None:
        self.deviations.append(text)

    def expect_poly(self, n: int, label: str, got: QPolynomial, expected: QPolynomial) -> None:
        self.cover(n)
        if got != expected:
            self.fail(f"n={n} {label}: got {got}, expected {expected}")


def _single(item) -> PatternSet:
    return PatternSet((item,))


def _all_perms(n: int):
    for letters in permutations(range(1, n + 1)):
        yield Permutation(letters)


# -- checks ------------------------------------------------------------------

def _check_tabulated_rows(max_n: int, jobs: int | None, found: _Findings) -> None:
    top = min(max(TABULATED_ROWS), max_n)
    if top < min(TABULATED_ROWS):
        found.notes.append("no tabulated rows at this bound")
        return
    matched = 0
    for n in range(min(TABULATED_ROWS), top + 1):
        for family, expected in zip((FIRST_FAMILY, SECOND_FAMILY), TABULATED_ROWS[n]):
            for base in family:
                label = f"F({base}{COLUMN_ONE_MESH})"
                found.expect_poly(n, label, stat_polynomial(n, base + COLUMN_ONE_MESH, jobs=jobs), QPolynomial(expected))
                matched += 1
    found.notes.append(f"{matched} tabulated polynomials compared")


def _check_family_pairs(max_n: int, jobs: int | None, found: _Findings) -> None:
    for n in range(1, max_n + 1):
        for first, second in (FIRST_FAMILY, SECOND_FAMILY):
            left = stat_polynomial(n, first + COLUMN_ONE_MESH, jobs=jobs)
            right = stat_polynomial(n, second + COLUMN_ONE_MESH, jobs=jobs)
            found.expect_poly(n, f"F({first}{COLUMN_ONE_MESH}) vs F({second}{COLUMN_ONE_MESH})", left, right)


def _check_narayana_and_meshes(max_n: int, jobs: int | None, found: _Findings) -> None:
    for n in range(1, max_n + 1):
        poly_312 = stat_polynomial(n, "312", jobs=jobs)
        expected = QPolynomial(tuple(narayana(n, k) for k in range(n)))
        found.expect_poly(n, "F(312) vs Narayana", poly_312, expected)
        found.expect_poly(n, "F(132) vs F(312)", stat_polynomial(n, "132", jobs=jobs), poly_312)

    for text in ONE_DIAGONAL + NO_DIAGONAL:
        diagonals = enclosed_diagonals(parse_pattern(text))
        wanted = 1 if text in ONE_DIAGONAL else 0
        if len(diagonals) != wanted:
            found.fail(f"{text} has {len(diagonals)} enclosed diagonal(s), expected {wanted}")

    classical = {
        n: avoiders(AvoidanceQuery(n, parse_pattern_set("132")), jobs) for n in range(MESH_SET_BOUND + 1)
    }
    for text in ONE_DIAGONAL + NO_DIAGONAL:
        mesh = parse_pattern(text)
        same = all(
            avoiders(AvoidanceQuery(n, _single(mesh)), jobs) == classical[n]
            for n in range(MESH_SET_BOUND + 1)
        )
        if same != is_superfluous(mesh):
            found.fail(
                f"{text}: superfluous={is_superfluous(mesh)} but Av sets "
                f"{'agree' if same else 'differ'} for n <= {MESH_SET_BOUND}"
            )

    swept = 0
    for letters in permutations((1, 2, 3)):
        base = Permutation(letters)
        classical = ClassicalPattern(base)
        hosts = [s for n in range(SUPERFLUOUS_SWEEP_BOUND + 1) for s in _all_perms(n) if contains(s, classical)]
        for mesh in meshes_without_enclosed_diagonal(base, SUPERFLUOUS_SWEEP_BOXES):
            missed = next((s for s in hosts if not contains(s, mesh)), None)
            if missed is not None:
                found.fail(f"{missed} avoids {mesh} but contains {base}, although the mesh has no enclosed diagonal")
            swept += 1
    found.notes.append(
        f"{swept} meshes on the six bases of length 3 with <= {SUPERFLUOUS_SWEEP_BOXES} boxes "
        f"and no enclosed diagonal match the classical class for n <= {SUPERFLUOUS_SWEEP_BOUND}"
    )


def _check_shaded_maps(max_n: int, jobs: int | None, found: _Findings) -> None:
    for n in range(1, max_n + 1):
        base = stat_polynomial(n, _single(SHADED_3124), jobs=jobs)
        for other in (SHADED_2314, SHADED_2413):
            found.expect_poly(n, f"F({SHADED_3124}) vs F({other})", base, stat_polynomial(n, _single(other), jobs=jobs))

    for n in range(4, min(AUDIT_BOUND, max_n) + 1):
        for name in ("alpha", "alpha24"):
            audit = alpha_audit(name, _all_perms(n))
            if not audit.des_preserving:
                found.fail(f"n={n}: {name} changes des of {audit.des_violation}")
            if not audit.lands_in_target:
                found.fail(f"n={n}: {name}({audit.target_violation}) avoids {SHADED_2314}")
            if audit.collision is not None:
                a, b, image = audit.collision
                found.deviate(f"n={n}: {name} not injective, {a} and {b} both map to {image}")
            if audit.round_trip_failure is not None:
                sigma, image, back = audit.round_trip_failure
                found.deviate(f"n={n}: beta(alpha({sigma})) = beta({image}) = {back}")


def _check_partitions(max_n: int, jobs: int | None, found: _Findings) -> None:
    runs = _single(RUNS_PATTERN)
    for n in range(1, max_n + 1):
        poly = stat_polynomial(n, runs, jobs=jobs)
        expected = QPolynomial(tuple(stirling2(n, k + 1) for k in range(n)))
        found.expect_poly(n, f"F({RUNS_PATTERN}) vs Stirling", poly, expected)

        seen = set()
        for sigma in avoiders(AvoidanceQuery(n, runs), jobs):
            partition = partition_from_avoider(sigma)
            if len(partition) != _des(sigma.letters) + 1:
                found.fail(f"{sigma} has {_des(sigma.letters)} descents but {len(partition)} blocks")
            if avoider_from_partition(partition) != sigma:
                found.fail(f"{sigma} -> {partition} -> {avoider_from_partition(partition)}")
            seen.add(partition)
        if len(seen) != poly.total():
            found.fail(f"n={n}: {poly.total()} avoiders give only {len(seen)} distinct partitions")

    for perm_text, partition_text in PARTITION_EXAMPLES:
        sigma = Permutation.parse(perm_text)
        partition = SetPartition.parse(partition_text)
        if partition_from_avoider(sigma) != partition or avoider_from_partition(partition) != sigma:
            found.fail(f"{sigma} <-> {partition} not reproduced")
    example = Permutation.parse(PARTITION_EXAMPLES[0][0])
    if example not in avoiders(AvoidanceQuery(7, runs, StatKind.DES, 2), jobs):
        found.fail(f"{example} missing from the n=7 avoiders with 2 descents")


def _check_motzkin(max_n: int, jobs: int | None, found: _Findings) -> None:
    for n in range(1, max_n + 1):
        poly = stat_polynomial(n, MOTZKIN_CLASS, jobs=jobs)
        expected = QPolynomial(tuple(motzkin_count(n, k) for k in range(n // 2 + 1)))
        found.expect_poly(n, f"F({MOTZKIN_CLASS}) vs Motzkin", poly, expected)

        for sigma in avoiders(AvoidanceQuery(n, MOTZKIN_CLASS), jobs):
            path = motzkin_from_avoider(sigma)
            if path.up_steps != _des(sigma.letters):
                found.fail(f"{sigma} has {_des(sigma.letters)} descents but {path} has {path.up_steps} up steps")
            if avoider_from_motzkin(path) != sigma:
                found.fail(f"{sigma} -> {path} -> {avoider_from_motzkin(path)}")
        for path in MotzkinPath.all_paths(n):
            back = motzkin_from_avoider(avoider_from_motzkin(path))
            if back != path:
                found.fail(f"{path} -> {avoider_from_motzkin(path)} -> {back}")

    sigma = Permutation.parse(MOTZKIN_EXAMPLE[0])
    path = MotzkinPath.parse(MOTZKIN_EXAMPLE[1])
    if motzkin_from_avoider(sigma) != path or avoider_from_motzkin(path) != sigma:
        found.fail(f"{sigma} <-> {path} not reproduced")


def _check_barred(max_n: int, jobs: int | None, found: _Findings) -> None:
    for n in range(0, max_n + 1):
        expected = eulerian_poly(n - 2) if n >= 2 else QPolynomial.one()
        for text in BARRED_ITEMS:
            found.expect_poly(n, f"F({text})", stat_polynomial(n, text, jobs=jobs), expected)


def _check_two_stack_partner(max_n: int, jobs: int | None, found: _Findings) -> None:
    for n in range(1, max_n + 1):
        left = stat_polynomial(n, WEST_TWO_SORTABLE, jobs=jobs)
        right = stat_polynomial(n, WEST_TWO_PARTNER, jobs=jobs)
        found.expect_poly(n, f"F({WEST_TWO_SORTABLE}) vs F({WEST_TWO_PARTNER})", left, right)
        found.expect_poly(n, f"F({WEST_TWO_SORTABLE}) vs closed form", left, bona_w2_poly(n))


def _check_two_stack_class(max_n: int, jobs: int | None, found: _Findings) -> None:
    for n in range(1, max_n + 1):
        found.cover(n)
        by_patterns = avoiders(AvoidanceQuery(n, WEST_TWO_SORTABLE), jobs)
        by_sorting = [sigma for sigma in _all_perms(n) if is_west_t_stack_sortable(sigma, 2)]
        if by_patterns != by_sorting:
            extra = sorted(set(by_patterns) ^ set(by_sorting))
            found.fail(f"n={n}: class and sortable set differ at {extra[0]}")
        if len(by_sorting) != west_two_sortable_count(n):
            found.fail(f"n={n}: {len(by_sorting)} sortable, expected {west_two_sortable_count(n)}")


def _check_sanity(max_n: int, jobs: int | None, found: _Findings) -> None:
    catalan_bound = max_n + 3
    for n in range(0, catalan_bound + 1):
        found.cover(n)
        for text in ("132", "123"):
            count = stat_polynomial(n, text, jobs=jobs).total()
            if count != catalan(n):
                found.fail(f"n={n}: |Av({text})| = {count}, expected {catalan(n)}")

    for n in range(0, max_n + 1):
        for kind in StatKind:
            expected = eulerian_poly(n) if kind in (StatKind.DES, StatKind.EXC) else q_factorial(n)
            found.expect_poly(n, f"F^{kind}(empty)", stat_polynomial(n, PatternSet(), kind, jobs), expected)

    length_four = [parse_pattern(base + COLUMN_ONE_MESH) for base in FIRST_FAMILY + SECOND_FAMILY]
    length_four += [SHADED_3124, SHADED_2314, SHADED_2413, ClassicalPattern(Permutation((1, 3, 2, 4)))]
    for n in range(0, min(3, max_n) + 1):
        for item in length_four:
            found.expect_poly(n, f"F({item})", stat_polynomial(n, _single(item), jobs=jobs), eulerian_poly(n))
    found.notes.append(f"Catalan counts checked for n <= {catalan_bound}")


CHECKS: dict[str, Callable[[int, int | None, _Findings], None]] = {
    "prop3.1": _check_narayana_and_meshes,
    "thm3.2": _check_shaded_maps,
    "prop3.3": _check_partitions,
    "thm3.4": _check_motzkin,
    "prop3.5": _check_barred,
    "table1": _check_tabulated_rows,
    "conj4.1": _check_family_pairs,
    "conj4.2": _check_two_stack_partner,
    "w2-sortable": _check_two_stack_class,
    "sanity": _check_sanity,
}


# -- runner ------------------------------------------------------------------

def run_check(check: VerifyCheck, jobs: int | None = None) -> CheckResult:
    logger.info(f"[VERIFY] {check.name} up to n={check.max_n}")
    found = _Findings()
    started = time.perf_counter()
    CHECKS[check.name](check.max_n, jobs, found)
    elapsed = time.perf_counter() - started
    result = CheckResult(
        name=check.name,
        status="fail" if found.failed else "pass",
        max_n=check.max_n,
        n_min=found.n_min,
        n_max=found.n_max,
        counterexample=found.counterexample,
        notes=found.notes,
        deviations=found.deviations,
        wall_time_s=round(elapsed, 3),
    )
    if found.failed:
        logger.warning(f"[VERIFY] {check.name} FAILED: {found.counterexample}")
    else:
        logger.info(f"[VERIFY] {check.name} passed in {elapsed:.2f}s")
    return result


def run_checks(checks: list[VerifyCheck], jobs: int | None = None, show_progress: bool = True) -> RunReport:
    """Run checks in the given order; progress goes to stderr."""
    report = RunReport(last_run=datetime.now().isoformat())
    if not show_progress:
        for check in checks:
            report.add(run_check(check, jobs))
        _log_summary(report)
        return report

    try:
        with Progress(
            TextColumn("[bold blue]{task.description}", justify="right"),
            BarColumn(bar_width=None),
            "[progress.percentage]{task.percentage:>3.0f}%",
            "•",
            TimeRemainingColumn(),
            console=Console(stderr=True),
            transient=True,
        ) as progress:
            task = progress.add_task("verify", total=len(checks))
            for check in checks:
                progress.update(task, description=check.name)
                report.add(run_check(check, jobs))
                progress.advance(task)
    except Exception as e:
        logger.error(f"[VERIFY] Run aborted: {e}")
        raise

    _log_summary(report)
    return report


def _log_summary(report: RunReport) -> None:
    logger.info(
        f"[VERIFY] {report.summary.checks_run} check(s): "
        f"{report.summary.passed} passed, {report.summary.failed} failed"
    )


def run_verify(check: VerifyCheck, jobs: int | None = None) -> RunReport:
    return run_checks([check], jobs)


def _stdout_exclusions(timings: bool):
    if timings:
        return None
    return {"last_run": True, "details": {"__all__": {"wall_time_s"}}}


def render_json(report: RunReport, timings: bool = False) -> str:
    return report.model_dump_json(indent=2, exclude=_stdout_exclusions(timings)) + "\n"


def render_text(report: RunReport, timings: bool = False, file=None) -> None:
    console = Console(file=file or sys.stdout, width=120, highlight=False)
    table = Table(title="Verification report")
    table.add_column("Check", style="cyan")
    table.add_column("Status", style="bold")
    table.add_column("n range", style="magenta")
    table.add_column("Details", style="green")
    if timings:
        table.add_column("Time (s)", justify="right")

    for result in report.details:
        span = "-" if result.n_min is None else f"{result.n_min}..{result.n_max}"
        detail = result.counterexample or "; ".join(result.notes)
        status = "[green]PASS[/green]" if result.status == "pass" else "[red]FAIL[/red]"
        row = [result.name, status, span, detail]
        if timings:
            row.append(f"{result.wall_time_s:.2f}")
        table.add_row(*row)
        if result.deviations:
            extra = [result.name, "[yellow]KNOWN DEVIATION[/yellow]", "-", "; ".join(result.deviations)]
            if timings:
                extra.append("")
            table.add_row(*extra)

    console.print(table)
    console.print(
        f"{report.summary.checks_run} check(s): {report.summary.passed} passed, {report.summary.failed} failed"
    )


def save_report(report: RunReport, directory: str | Path | None = None) -> Path:
    """Write the full report (timestamps and wall times included) as JSON."""
    target_dir = Path(directory or config.REPORT_DIR)
    target_dir.mkdir(parents=True, exist_ok=True)
    path = target_dir / REPORT_FILENAME
    try:
        path.write_text(report.model_dump_json(indent=2))
        logger.info(f"[VERIFY] Report saved to {path}")
    except Exception as e:
        logger.error(f"[VERIFY] Failed to save report: {e}")
        raise
    return path
