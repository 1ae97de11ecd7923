"""
Colored permutations (ε, σ) in G_{r,n} = Z_r^n x S_n and colored-pattern avoidance.

The statistic of a colored permutation is the statistic of its underlying
permutation; colors only take part in containment.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product
from multiprocessing import Pool
from typing import Iterable, Iterator, Sequence

from . import config
from . import logger_config
from . import notation
from .errors import DomainError, InvalidPermutation, ModulusMismatch
from .patterns import _embeddings
from .perm_core import STAT_FUNCTIONS, Permutation, StatKind
from .qpoly import QPolynomial

logger = logger_config.get_logger(__name__)


@dataclass(frozen=True, slots=True)
class ColoredPermutation:
    r: int
    colors: tuple[int, ...]
    perm: Permutation

    def __post_init__(self):
        if self.r < 1:
            raise DomainError(f"modulus r must be >= 1 (got {self.r})")
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if not isinstance(self.perm, Permutation):
            object.__setattr__(self, "perm", Permutation(tuple(self.perm)))
        if len(colors) != self.perm.n:
            raise InvalidPermutation(
                f"{len(colors)} colors for a permutation of length {self.perm.n}"
            )
        for c in colors:
            if not 0 <= c < self.r:
                raise InvalidPermutation(f"color {c} outside Z_{self.r}")

    @property
    def n(self) -> int:
        return self.perm.n

    def __str__(self) -> str:
        return f"r={self.r}: {','.join(map(str, self.colors))} / {self.perm}"

    @classmethod
    def parse(cls, text: str) -> ColoredPermutation:
        """``r=2: 0,1,0 / 231``."""
        r, colors, letters = notation.parse(text, "colored")
        return cls(r, colors, Permutation(letters))


def _colored_contains(
    letters: Sequence[int], colors: Sequence[int], pattern: tuple[tuple[int, ...], tuple[int, ...]]
) -> bool:
    wanted, pattern_letters = pattern
    return any(
        all(colors[i] == c for i, c in zip(idx, wanted))
        for idx in _embeddings(letters, pattern_letters)
    )


def _check_modulus(host_r: int, pattern: ColoredPermutation) -> None:
    if any(c >= host_r for c in pattern.colors):
        raise ModulusMismatch(f"pattern {pattern} uses a color outside Z_{host_r}")


def colored_contains(host: ColoredPermutation, pattern: ColoredPermutation) -> bool:
    """Some occurrence of pattern.perm whose letters carry exactly the pattern colors."""
    _check_modulus(host.r, pattern)
    return _colored_contains(host.perm.letters, host.colors, (pattern.colors, pattern.perm.letters))


def colored_permutations(r: int, n: int) -> Iterator[ColoredPermutation]:
    """All of G_{r,n}, ordered by permutation then color vector."""
    for letters in permutations(range(1, n + 1)):
        perm = Permutation(letters)
        for colors in product(range(r), repeat=n):
            yield ColoredPermutation(r, colors, perm)


def _color_block(args):
    r, n, first_color, patterns, kind, collect = args
    stat_fn = STAT_FUNCTIONS[StatKind(kind)]
    counts: Counter = Counter()
    found = []
    for letters in permutations(range(1, n + 1)):
        for rest in product(range(r), repeat=n - 1):
            colors = (first_color, *rest)
            if any(_colored_contains(letters, colors, p) for p in patterns):
                continue
            if collect == "list":
                found.append((colors, letters))
            else:
                counts[stat_fn(letters)] += 1
    return found if collect == "list" else counts


def _run(r: int, n: int, patterns: Sequence[ColoredPermutation], kind, collect: str, jobs: int | None):
    if r < 1:
        raise DomainError(f"modulus r must be >= 1 (got {r})")
    if n < 0:
        raise DomainError(f"n must be >= 0 (got {n})")
    for p in patterns:
        _check_modulus(r, p)
    patterns = tuple((p.colors, p.perm.letters) for p in patterns)
    if n == 0:
        if collect == "list":
            return [[((), ())]]
        return [Counter({0: 1})]
    tasks = [(r, n, color, patterns, StatKind(kind).value, collect) for color in range(r)]
    jobs = config.DEFAULT_JOBS if jobs is None else jobs
    if jobs <= 1 or r == 1:
        return [_color_block(task) for task in tasks]
    with Pool(processes=min(jobs, r)) as pool:
        return pool.map(_color_block, tasks)


def colored_avoiders(
    r: int, n: int, patterns: Iterable[ColoredPermutation] = (), jobs: int | None = None
) -> list[ColoredPermutation]:
    blocks = _run(r, n, tuple(patterns), StatKind.DES, "list", jobs)
    found = [ColoredPermutation(r, colors, Permutation(letters)) for block in blocks for colors, letters in block]
    return sorted(found, key=lambda c: (c.perm.letters, c.colors))


def colored_stat_polynomial(
    r: int,
    n: int,
    patterns: Iterable[ColoredPermutation] = (),
    kind: StatKind | str = StatKind.DES,
    jobs: int | None = None,
) -> QPolynomial:
    """Brute-force F_{r,n}^st(Π; q) over all r^n n! colored permutations."""
    counts: Counter = Counter()
    for block in _run(r, n, tuple(patterns), kind, "counts", jobs):
        counts.update(block)
    poly = QPolynomial.from_counts(dict(counts))
    logger.debug(f"[COLORED] F_{{{r},{n}}}^{StatKind(kind)} = {poly}")
    return poly
