"""
Avoidance classes and their statistic generating polynomials.

Av_n(Π) is generated in lexicographic order by a depth-first search over
prefixes. A prefix is abandoned as soon as it is known to contain a
prefix-closed item (or, with a statistic filter, once its statistic is
already too large; all four statistics only grow under extension). The
remaining items are checked on complete permutations.

With ``jobs > 1`` the search is split by first letter across a process pool
and the blocks are concatenated in order, so results do not depend on the
worker count.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterable, Iterator

from . import config
from . import logger_config
from .errors import DomainError, UnsupportedBarredPattern
from .patterns import (
    BarredPattern,
    PatternSet,
    _word_contains,
    is_prefix_closed,
    parse_pattern_set,
    prefix_forces_containment,
)
from .perm_core import STAT_FUNCTIONS, Permutation, StatKind
from .qpoly import QPolynomial

logger = logger_config.get_logger(__name__)


def max_stat_value(kind: StatKind | str, n: int) -> int:
    kind = StatKind(kind)
    if n <= 1:
        return 0
    if kind in (StatKind.INV, StatKind.MAJ):
        return n * (n - 1) // 2
    return n - 1


@dataclass(frozen=True)
class AvoidanceQuery:
    """Av_n(Π), optionally restricted to permutations with stat equal to ``stat_value``."""

    n: int
    patterns: PatternSet = field(default_factory=PatternSet)
    stat: StatKind = StatKind.DES
    stat_value: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n must be >= 0 (got {self.n})")
        object.__setattr__(self, "stat", StatKind(self.stat))
        if isinstance(self.patterns, str):
            object.__setattr__(self, "patterns", parse_pattern_set(self.patterns))
        for item in self.patterns:
            if isinstance(item, BarredPattern) and not item.supported:
                raise UnsupportedBarredPattern(f"containment of {item} is not defined")
        if self.stat_value is not None:
            top = max_stat_value(self.stat, self.n)
            if not 0 <= self.stat_value <= top:
                raise DomainError(
                    f"{self.stat}={self.stat_value} is impossible for n={self.n} (range 0..{top})"
                )


def _search_block(query: AvoidanceQuery, first: int | None) -> Iterator[tuple[int, ...]]:
    """Avoiders whose first letter is ``first`` (all of them when None), lexicographically."""
    n = query.n
    items = list(query.patterns)
    at_leaf = [item for item in items if not is_prefix_closed(item)]
    stat_fn = STAT_FUNCTIONS[query.stat]
    target = query.stat_value

    if n == 0:
        if first is None and (target is None or target == 0):
            yield ()
        return

    prefix: list[int] = []
    unused = [True] * (n + 1)

    def viable() -> bool:
        if target is not None and stat_fn(prefix) > target:
            return False
        return not any(prefix_forces_containment(prefix, item, n) for item in items)

    def extend() -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            if target is not None and stat_fn(prefix) != target:
                return
            if any(_word_contains(prefix, item) for item in at_leaf):
                return
            yield tuple(prefix)
            return
        for v in range(1, n + 1):
            if not unused[v]:
                continue
            prefix.append(v)
            unused[v] = False
            if viable():
                yield from extend()
            unused[v] = True
            prefix.pop()

    if first is None:
        yield from extend()
        return
    prefix.append(first)
    unused[first] = False
    if viable():
        yield from extend()


def _block_task(args):
    n, first, patterns_text, stat_name, stat_value, collect = args
    query = AvoidanceQuery(n, parse_pattern_set(patterns_text), StatKind(stat_name), stat_value)
    return _collect(query, first, collect)


def _collect(query: AvoidanceQuery, first: int | None, collect: str):
    found = _search_block(query, first)
    if collect == "list":
        return list(found)
    stat_fn = STAT_FUNCTIONS[query.stat]
    return Counter(stat_fn(letters) for letters in found)


def _run(query: AvoidanceQuery, collect: str, jobs: int | None):
    jobs = config.DEFAULT_JOBS if jobs is None else jobs
    if jobs < 1:
        raise DomainError(f"jobs must be >= 1 (got {jobs})")
    if jobs == 1 or query.n <= 1:
        return [_collect(query, None, collect)]
    tasks = [
        (query.n, first, str(query.patterns), query.stat.value, query.stat_value, collect)
        for first in range(1, query.n + 1)
    ]
    with Pool(processes=min(jobs, len(tasks))) as pool:
        return pool.map(_block_task, tasks)


def avoiders(query: AvoidanceQuery, jobs: int | None = None) -> list[Permutation]:
    """Av_n(Π) (with the optional statistic filter) in lexicographic order."""
    started = time.perf_counter()
    blocks = _run(query, "list", jobs)
    result = [Permutation(letters) for block in blocks for letters in block]
    logger.debug(
        f"[ENUM] n={query.n} patterns={str(query.patterns)!r}: {len(result)} avoiders "
        f"in {time.perf_counter() - started:.2f}s"
    )
    return result


def count_avoiders(n: int, patterns: PatternSet | str = PatternSet(), jobs: int | None = None) -> int:
    return stat_polynomial(n, patterns, StatKind.DES, jobs).total()


def stat_polynomial(
    n: int,
    patterns: PatternSet | str = PatternSet(),
    kind: StatKind | str = StatKind.DES,
    jobs: int | None = None,
) -> QPolynomial:
    """F_n^st(Π; q): coefficient of q^k counts avoiders with statistic k."""
    query = AvoidanceQuery(n, patterns, StatKind(kind))
    started = time.perf_counter()
    counts: Counter = Counter()
    for block in _run(query, "counts", jobs):
        counts.update(block)
    poly = QPolynomial.from_counts(dict(counts))
    logger.debug(
        f"[ENUM] F_{n}^{query.stat}({query.patterns}) = {poly} "
        f"({time.perf_counter() - started:.2f}s)"
    )
    return poly


def stat_table(
    n_values: Iterable[int],
    patterns: PatternSet | str = PatternSet(),
    kind: StatKind | str = StatKind.DES,
    jobs: int | None = None,
) -> list[tuple[int, QPolynomial]]:
    return [(n, stat_polynomial(n, patterns, kind, jobs)) for n in n_values]


def st_wilf_equivalent(
    first: PatternSet | str,
    second: PatternSet | str,
    kind: StatKind | str = StatKind.DES,
    max_n: int = 7,
    jobs: int | None = None,
) -> int | None:
    """The least n <= max_n where the two polynomials differ, or None if they agree throughout."""
    for n in range(max_n + 1):
        if stat_polynomial(n, first, kind, jobs) != stat_polynomial(n, second, kind, jobs):
            return n
    return None
