"""
Classical, mesh and barred pattern containment.

Occurrences are found by a depth-first search over index sets that extends a
partial occurrence only while its relative order agrees with the pattern
prefix. Mesh regions use the sentinels 0 and n+1 on both axes: for an
occurrence at positions i_1 < ... < i_k with sorted values v_1 < ... < v_k,
box (a, b) is the open rectangle i_a < x < i_{a+1}, v_b < y < v_{b+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence, Union

from . import logger_config
from . import notation
from .errors import InvalidOccurrence, InvalidPattern, UnsupportedBarredPattern
from .perm_core import DihedralElement, Permutation, _apply_dihedral, _standardize

logger = logger_config.get_logger(__name__)

Box = tuple[int, int]

BARRED_1243 = ((1, 2, 4, 3), frozenset({1, 2}))
BARRED_1324 = ((1, 3, 2, 4), frozenset({1, 4}))


def _letters_text(letters: Sequence[int], marks: frozenset[int] = frozenset()) -> str:
    sep = "" if len(letters) <= 9 else ","
    return sep.join(f"{a}'" if i in marks else str(a) for i, a in enumerate(letters, start=1))


@dataclass(frozen=True, slots=True)
class ClassicalPattern:
    base: Permutation

    def __post_init__(self):
        if self.base.n == 0:
            raise InvalidPattern("a pattern needs at least one letter")

    def __str__(self) -> str:
        return str(self.base)

    def apply_dihedral(self, f: DihedralElement) -> ClassicalPattern:
        return ClassicalPattern(Permutation(_apply_dihedral(f, self.base.letters)))


@dataclass(frozen=True, slots=True)
class MeshPattern:
    """A pair (π, M): base permutation of length k and shaded boxes M ⊆ [0,k]²."""

    base: Permutation
    mesh: frozenset[Box] = field(default_factory=frozenset)

    def __post_init__(self):
        boxes = frozenset((int(a), int(b)) for a, b in self.mesh)
        object.__setattr__(self, "mesh", boxes)
        k = self.base.n
        if k == 0:
            raise InvalidPattern("a pattern needs at least one letter")
        for a, b in boxes:
            if not (0 <= a <= k and 0 <= b <= k):
                raise InvalidPattern(f"box ({a},{b}) lies outside [0,{k}]^2")

    @property
    def k(self) -> int:
        return self.base.n

    def __str__(self) -> str:
        return str(self.base) + "|" + "".join(f"({a},{b})" for a, b in sorted(self.mesh))

    def apply_dihedral(self, f: DihedralElement) -> MeshPattern:
        """Transform the plot and the shading together."""
        k = self.k
        m = f.matrix
        boxes = set()
        for a, b in self.mesh:
            # box centres in doubled centred coordinates
            x, y = 2 * a - k, 2 * b - k
            nx = int(m[0, 0] * x + m[0, 1] * y)
            ny = int(m[1, 0] * x + m[1, 1] * y)
            boxes.add(((nx + k) // 2, (ny + k) // 2))
        return MeshPattern(Permutation(_apply_dihedral(f, self.base.letters)), frozenset(boxes))


@dataclass(frozen=True, slots=True)
class BarredPattern:
    base: Permutation
    barred: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "barred", frozenset(int(i) for i in self.barred))
        for i in self.barred:
            if not 1 <= i <= self.base.n:
                raise InvalidPattern(f"barred position {i} is not a position of {self.base}")

    def __str__(self) -> str:
        return _letters_text(self.base.letters, self.barred)

    @property
    def supported(self) -> bool:
        return (self.base.letters, self.barred) in (BARRED_1243, BARRED_1324)


PatternItem = Union[ClassicalPattern, MeshPattern, BarredPattern]


@dataclass(frozen=True, slots=True)
class PatternSet:
    """An ordered set Π of pattern items; empty means nothing is avoided."""

    items: tuple[PatternItem, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __str__(self) -> str:
        return "; ".join(str(item) for item in self.items)

    def apply_dihedral(self, f: DihedralElement) -> PatternSet:
        transformed = []
        for item in self.items:
            if isinstance(item, BarredPattern):
                raise UnsupportedBarredPattern("plot symmetries of barred patterns are not defined")
            transformed.append(item.apply_dihedral(f))
        return PatternSet(tuple(transformed))


@dataclass(frozen=True, slots=True)
class Occurrence:
    """Strictly increasing 1-based positions i_1 < ... < i_k into a host."""

    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise InvalidOccurrence(f"positions {self.indices} are not strictly increasing")

    def letters(self, host: Permutation) -> tuple[int, ...]:
        return tuple(host.letters[i - 1] for i in self.indices)


@dataclass(frozen=True, slots=True)
class EnclosedDiagonal:
    anchor: tuple[int, int]
    direction: int
    length: int


# -- occurrence search -------------------------------------------------------

def _prefix_bounds(pattern: Sequence[int]) -> list[tuple[int | None, int | None]]:
    """For each t, the earlier pattern indices holding the nearest smaller and larger value."""
    bounds = []
    for t, p in enumerate(pattern):
        below = [s for s in range(t) if pattern[s] < p]
        above = [s for s in range(t) if pattern[s] > p]
        lo = max(below, key=lambda s: pattern[s]) if below else None
        hi = min(above, key=lambda s: pattern[s]) if above else None
        bounds.append((lo, hi))
    return bounds


def _embeddings(
    host: Sequence[int],
    pattern: Sequence[int],
    value_bound: int | None = None,
    last_only: bool = False,
) -> Iterator[tuple[int, ...]]:
    """0-based index tuples of ``host`` order-isomorphic to ``pattern``, lexicographically.

    With ``last_only`` the final pattern letter is pinned to the last host position.
    """
    n = len(host)
    k = len(pattern)
    if k > n:
        return
    if k == 0:
        if not last_only:
            yield ()
        return
    top = (value_bound if value_bound is not None else n) + 1
    bounds = _prefix_bounds(pattern)
    chosen: list[int] = []

    def extend(t: int, start: int) -> Iterator[tuple[int, ...]]:
        if t == k:
            yield tuple(chosen)
            return
        lo, hi = bounds[t]
        low = host[chosen[lo]] if lo is not None else 0
        high = host[chosen[hi]] if hi is not None else top
        if last_only and t == k - 1:
            candidates = range(n - 1, n) if start <= n - 1 else range(0)
        else:
            stop = n - (k - t) + 1
            if last_only:
                stop = min(stop, n - 1)
            candidates = range(start, stop)
        for i in candidates:
            x = host[i]
            if low < x < high:
                chosen.append(i)
                yield from extend(t + 1, i + 1)
                chosen.pop()

    yield from extend(0, 0)


def _mesh_clear(
    host: Sequence[int],
    idx: Sequence[int],
    mesh: frozenset[Box],
    value_bound: int | None = None,
) -> bool:
    """True iff no host point falls in a shaded region of the occurrence at 0-based ``idx``."""
    if not mesh:
        return True
    n = len(host)
    top = (value_bound if value_bound is not None else n) + 1
    cols = [-1, *idx, n]
    rows = [0, *sorted(host[i] for i in idx), top]
    for a, b in mesh:
        low, high = rows[b], rows[b + 1]
        for c in range(cols[a] + 1, cols[a + 1]):
            if low < host[c] < high:
                return False
    return True


def occurrences(sigma: Permutation, pi: Permutation) -> list[Occurrence]:
    """All occurrences of the classical pattern π in σ, in lexicographic index order."""
    return [
        Occurrence(tuple(i + 1 for i in idx))
        for idx in _embeddings(sigma.letters, pi.letters)
    ]


def occurrence_satisfies_mesh(sigma: Permutation, occ: Occurrence, p: MeshPattern) -> bool:
    if len(occ.indices) != p.k or any(not 1 <= i <= sigma.n for i in occ.indices):
        raise InvalidOccurrence(f"positions {occ.indices} do not index a length-{p.k} subsequence")
    letters = occ.letters(sigma)
    if _standardize(letters) != p.base.letters:
        raise InvalidOccurrence(
            f"{_letters_text(letters)} is not an occurrence of {p.base}"
        )
    return _mesh_clear(sigma.letters, [i - 1 for i in occ.indices], p.mesh)


# -- barred patterns ---------------------------------------------------------

def _check_supported(b: BarredPattern) -> None:
    if not b.supported:
        raise UnsupportedBarredPattern(
            f"containment of {b} is not defined; only 1'2'43 and 1'324' are supported"
        )


def _violates_1243(letters: Sequence[int], last_only: bool = False) -> bool:
    """Some inversion a_i a_j with no ascent a_k < a_l (k < l < i) below a_j."""
    n = len(letters)
    inf = float("inf")
    # least_top[i]: smallest a_l (l < i) that has a smaller letter before it
    least_top = [inf] * n
    running_min = inf
    best = inf
    for i in range(n):
        least_top[i] = best
        if letters[i] > running_min:
            best = min(best, letters[i])
        running_min = min(running_min, letters[i])
    js = [n - 1] if last_only and n else range(n)
    for j in js:
        for i in range(j):
            if letters[i] > letters[j] and not least_top[i] < letters[j]:
                return True
    return False


def _violates_1324(letters: Sequence[int]) -> bool:
    """Some inversion a_i a_j lacking a_k < a_j before i or a_l > a_i after j."""
    n = len(letters)
    inf = float("inf")
    prefix_min = [inf] * (n + 1)
    for i in range(n):
        prefix_min[i + 1] = min(prefix_min[i], letters[i])
    suffix_max = [-inf] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_max[i] = max(suffix_max[i + 1], letters[i])
    for i in range(n):
        for j in range(i + 1, n):
            if letters[i] > letters[j]:
                if not (prefix_min[i] < letters[j] and suffix_max[j + 1] > letters[i]):
                    return True
    return False


def avoids_barred(sigma: Permutation, b: BarredPattern) -> bool:
    _check_supported(b)
    if b.base.letters == BARRED_1243[0]:
        return not _violates_1243(sigma.letters)
    return not _violates_1324(sigma.letters)


# -- containment -------------------------------------------------------------

def is_prefix_closed(item: PatternItem) -> bool:
    """Whether an occurrence inside a prefix survives every extension of it.

    Holds for classical patterns, for mesh patterns with nothing shaded in the
    last column, and for 1'2'43.
    """
    if isinstance(item, ClassicalPattern):
        return True
    if isinstance(item, MeshPattern):
        return all(a < item.k for a, _ in item.mesh)
    return item.supported and item.base.letters == BARRED_1243[0]


def _word_contains(
    letters: Sequence[int],
    item: PatternItem,
    value_bound: int | None = None,
    last_only: bool = False,
) -> bool:
    if isinstance(item, ClassicalPattern):
        return next(_embeddings(letters, item.base.letters, value_bound, last_only), None) is not None
    if isinstance(item, MeshPattern):
        return any(
            _mesh_clear(letters, idx, item.mesh, value_bound)
            for idx in _embeddings(letters, item.base.letters, value_bound, last_only)
        )
    _check_supported(item)
    if item.base.letters == BARRED_1243[0]:
        return _violates_1243(letters, last_only)
    return _violates_1324(letters)


def _1324_left_violated_at_last(letters: Sequence[int]) -> bool:
    """The last letter ends an inversion with no smaller letter before its top."""
    if not letters:
        return False
    x = letters[-1]
    running_min = float("inf")
    for a in letters[:-1]:
        if a > x and not running_min < x:
            return True
        running_min = min(running_min, a)
    return False


def prefix_forces_containment(prefix: Sequence[int], item: PatternItem, value_bound: int) -> bool:
    """True when every permutation of [value_bound] starting with ``prefix`` contains ``item``.

    Only occurrences involving the last prefix letter are examined, so the
    caller must have checked the shorter prefixes already. False means
    "undecided" for items that are not prefix-closed.
    """
    if is_prefix_closed(item):
        return _word_contains(prefix, item, value_bound, last_only=True)
    if isinstance(item, BarredPattern) and item.supported:
        return _1324_left_violated_at_last(prefix)
    return False


def contains(sigma: Permutation, item: PatternItem) -> bool:
    return _word_contains(sigma.letters, item)


def avoids(sigma: Permutation, patterns: PatternSet | Sequence[PatternItem]) -> bool:
    return not any(_word_contains(sigma.letters, item) for item in patterns)


def contains_all(sigma: Permutation, patterns: PatternSet | Sequence[PatternItem]) -> bool:
    return all(_word_contains(sigma.letters, item) for item in patterns)


# -- enclosed diagonals ------------------------------------------------------

def enclosed_diagonals(p: MeshPattern) -> list[EnclosedDiagonal]:
    """Every enclosed diagonal of (π, M).

    Along ε = +1 the boxes are (i+d, j+d) and the inner corners (i+d, j+d);
    along ε = -1 the inner corners are (i+d, j-d) and the boxes (i+d, j-d-1).
    A single box counts when none of its four corners is a point of π and is
    reported once, with ε = +1.
    """
    k = p.k
    points = {(i, a) for i, a in enumerate(p.base.letters, start=1)}
    found = []
    for direction in (1, -1):
        for i in range(k + 1):
            for j in range(k + 2):
                if (i, j) in points:
                    continue
                length = _diagonal_length(i, j, direction, p.mesh, points)
                if length is None:
                    continue
                if length == 1:
                    if direction == -1:
                        continue
                    if (i + 1, j) in points or (i, j + 1) in points:
                        continue
                found.append(EnclosedDiagonal((i, j), direction, length))
    return found


def _diagonal_length(i, j, direction, mesh, points) -> int | None:
    def box(d):
        return (i + d, j + d) if direction == 1 else (i + d, j - d - 1)

    if box(0) not in mesh:
        return None
    d = 1
    while True:
        corner = (i + d, j + direction * d)
        if corner not in points:
            return d
        if box(d) not in mesh:
            return None
        d += 1


def is_superfluous(p: MeshPattern) -> bool:
    """A mesh is superfluous iff it has no enclosed diagonal; an empty mesh trivially is."""
    return not enclosed_diagonals(p)


def meshes_without_enclosed_diagonal(base: Permutation, max_boxes: int | None = None) -> Iterator[MeshPattern]:
    """Nonempty meshes on ``base`` with no enclosed diagonal, smallest first."""
    k = base.n
    boxes = [(a, b) for a in range(k + 1) for b in range(k + 1)]
    limit = len(boxes) if max_boxes is None else min(max_boxes, len(boxes))
    for size in range(1, limit + 1):
        for chosen in combinations(boxes, size):
            candidate = MeshPattern(base, frozenset(chosen))
            if is_superfluous(candidate):
                yield candidate


# -- notation ----------------------------------------------------------------

def _item_from_primitive(letters, barred, boxes) -> PatternItem:
    base = Permutation(letters)
    if barred:
        return BarredPattern(base, barred)
    if boxes is None:
        return ClassicalPattern(base)
    return MeshPattern(base, frozenset(boxes))


def parse_pattern_set(text: str) -> PatternSet:
    """Parse ``321; 231|(1,0)``, ``1'2'43`` and friends."""
    items = tuple(_item_from_primitive(*raw) for raw in notation.parse(text, "pattern_set"))
    logger.debug(f"[PATTERN] parsed {len(items)} item(s) from {text!r}")
    return PatternSet(items)


def parse_pattern(text: str) -> PatternItem:
    parsed = parse_pattern_set(text)
    if len(parsed) != 1:
        raise InvalidPattern(f"expected exactly one pattern, got {len(parsed)}")
    return parsed.items[0]
