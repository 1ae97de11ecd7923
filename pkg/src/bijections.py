"""
Constructive maps between avoidance classes and other combinatorial objects.

- runs of a (132,{(2,0)})-avoider  <->  set partitions (blocks = increasing runs)
- {321, (231,{(1,0)})}-avoiders     <->  Motzkin paths (up = descent bottom, down = descent top)
- the column-shaded 3124/2314/2413 maps used for des-Wilf equivalence
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import logger_config
from . import notation
from .errors import InvalidPartition, InvalidPath, NotInClass, NotInSourceClass
from .patterns import (
    ClassicalPattern,
    MeshPattern,
    PatternSet,
    _embeddings,
    _mesh_clear,
    avoids,
    contains,
)
from .perm_core import (
    DihedralElement,
    Permutation,
    _des,
    apply_dihedral_relative,
    descent_bottoms,
    descent_tops,
)

logger = logger_config.get_logger(__name__)

_FULL_COLUMNS_1_2 = frozenset((c, r) for c in (1, 2) for r in range(5))

RUNS_PATTERN = MeshPattern(Permutation((1, 3, 2)), frozenset({(2, 0)}))
MOTZKIN_CLASS = PatternSet(
    (
        ClassicalPattern(Permutation((3, 2, 1))),
        MeshPattern(Permutation((2, 3, 1)), frozenset({(1, 0)})),
    )
)
SHADED_3124 = MeshPattern(Permutation((3, 1, 2, 4)), _FULL_COLUMNS_1_2)
SHADED_2314 = MeshPattern(Permutation((2, 3, 1, 4)), _FULL_COLUMNS_1_2)
SHADED_2413 = MeshPattern(Permutation((2, 4, 1, 3)), _FULL_COLUMNS_1_2)


# -- set partitions ----------------------------------------------------------

@dataclass(frozen=True, slots=True)
class SetPartition:
    """Blocks of [n], each sorted, ordered by increasing minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = [tuple(sorted(int(x) for x in block)) for block in self.blocks]
        if any(not block for block in blocks):
            raise InvalidPartition("blocks must be nonempty")
        flat = [x for block in blocks for x in block]
        if len(flat) != len(set(flat)):
            raise InvalidPartition("blocks must be pairwise disjoint")
        if sorted(flat) != list(range(1, len(flat) + 1)):
            raise InvalidPartition(f"blocks cover {sorted(flat)}, not 1..{len(flat)}")
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=lambda b: b[0])))

    @property
    def n(self) -> int:
        return sum(len(block) for block in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"

    @classmethod
    def parse(cls, text: str) -> SetPartition:
        return cls(tuple(tuple(block) for block in notation.parse(text, "partition")))


def partition_from_avoider(sigma: Permutation) -> SetPartition:
    """Blocks are the maximal increasing runs of σ; there are des(σ) + 1 of them."""
    if contains(sigma, RUNS_PATTERN):
        raise NotInClass(f"{sigma} contains {RUNS_PATTERN}")
    if sigma.n == 0:
        return SetPartition(())
    runs = [[sigma.letters[0]]]
    for prev, a in zip(sigma.letters, sigma.letters[1:]):
        if a < prev:
            runs.append([a])
        else:
            runs[-1].append(a)
    return SetPartition(tuple(tuple(run) for run in runs))


def avoider_from_partition(partition: SetPartition) -> Permutation:
    """Concatenate the blocks by decreasing minimum, each block increasing."""
    if not isinstance(partition, SetPartition):
        partition = SetPartition(tuple(partition))
    return Permutation(tuple(x for block in reversed(partition.blocks) for x in block))


# -- Motzkin paths -----------------------------------------------------------

@dataclass(frozen=True, slots=True)
class MotzkinPath:
    """Steps over U, D, H; never below the axis and ending on it."""

    steps: str

    def __post_init__(self):
        steps = "".join(str(s) for s in self.steps).upper()
        object.__setattr__(self, "steps", steps)
        height = 0
        for position, step in enumerate(steps, start=1):
            if step not in "UDH":
                raise InvalidPath(f"step {position} is {step!r}, expected U, D or H")
            height += {"U": 1, "D": -1, "H": 0}[step]
            if height < 0:
                raise InvalidPath(f"path drops below the axis at step {position}")
        if height != 0:
            raise InvalidPath(f"path ends at height {height}")

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.steps

    @property
    def up_steps(self) -> int:
        return self.steps.count("U")

    def height_profile(self) -> list[int]:
        heights = [0]
        for step in self.steps:
            heights.append(heights[-1] + {"U": 1, "D": -1, "H": 0}[step])
        return heights

    @classmethod
    def parse(cls, text: str) -> MotzkinPath:
        return cls(notation.parse(text, "path"))

    @classmethod
    def all_paths(cls, n: int) -> Iterator[MotzkinPath]:
        def walk(prefix: str, height: int) -> Iterator[str]:
            remaining = n - len(prefix)
            if remaining == 0:
                if height == 0:
                    yield prefix
                return
            if height > 0:
                yield from walk(prefix + "D", height - 1)
            yield from walk(prefix + "H", height)
            if height + 1 <= remaining - 1:
                yield from walk(prefix + "U", height + 1)

        for steps in walk("", 0):
            yield cls(steps)


def motzkin_from_avoider(sigma: Permutation) -> MotzkinPath:
    """Step v is U if v is a descent bottom, D if a descent top, H otherwise."""
    if not avoids(sigma, MOTZKIN_CLASS):
        raise NotInClass(f"{sigma} does not avoid {MOTZKIN_CLASS}")
    tops = descent_tops(sigma)
    bottoms = descent_bottoms(sigma)
    steps = []
    for v in range(1, sigma.n + 1):
        steps.append("U" if v in bottoms else "D" if v in tops else "H")
    return MotzkinPath("".join(steps))


def avoider_from_motzkin(path: MotzkinPath) -> Permutation:
    """Write 1..n without the down labels, then put the i-th down label right before the i-th up label."""
    if not isinstance(path, MotzkinPath):
        path = MotzkinPath(path)
    ups = [v for v, s in enumerate(path.steps, start=1) if s == "U"]
    downs = [v for v, s in enumerate(path.steps, start=1) if s == "D"]
    insert_before = dict(zip(ups, downs))
    down_set = set(downs)
    letters = []
    for v in range(1, len(path) + 1):
        if v in down_set:
            continue
        if v in insert_before:
            letters.append(insert_before[v])
        letters.append(v)
    return Permutation(tuple(letters))


# -- the column-shaded des-preserving maps -----------------------------------

def _first_occurrence_start(sigma: Permutation, p: MeshPattern) -> int | None:
    """1-based position where the earliest mesh-valid occurrence of ``p`` begins."""
    letters = sigma.letters
    for idx in _embeddings(letters, p.base.letters):
        if _mesh_clear(letters, idx, p.mesh):
            # shading columns 1 and 2 forces the first three letters to be adjacent
            assert idx[1] == idx[0] + 1 and idx[2] == idx[0] + 2, idx
            return idx[0] + 1
    return None


def _rotate_block(letters: tuple[int, ...], pivot_value: int, j: int, p: int) -> tuple[int, ...]:
    """Apply relative R180 to positions i..p-1 (1-based), i the start of the run below a_p ending at j."""
    i = j
    while i > 1 and letters[i - 2] < pivot_value:
        i -= 1
    block = letters[i - 1:p - 1]
    rotated = apply_dihedral_relative(DihedralElement.R180, block).letters
    return letters[:i - 1] + rotated + letters[p - 1:]


def _next_larger(letters: tuple[int, ...], j: int, threshold: int) -> int:
    """min{m > j+2 : a_m > threshold}, 1-based."""
    for m in range(j + 3, len(letters) + 1):
        if letters[m - 1] > threshold:
            return m
    raise AssertionError("an occurrence guarantees a larger letter after it")


def alpha_31_to_23(sigma: Permutation) -> Permutation:
    """Map a permutation containing shaded 3124 to one containing shaded 2314, keeping des."""
    j = _first_occurrence_start(sigma, SHADED_3124)
    if j is None:
        raise NotInSourceClass(f"{sigma} does not contain {SHADED_3124}")
    if contains(sigma, SHADED_2314):
        return sigma
    a = sigma.letters
    p = _next_larger(a, j, a[j - 1])
    return Permutation(_rotate_block(a, a[p - 1], j, p))


def beta_23_to_31(sigma: Permutation) -> Permutation:
    """Reverse construction for alpha_31_to_23, including its fixed-point guard."""
    j = _first_occurrence_start(sigma, SHADED_2314)
    if j is None:
        raise NotInSourceClass(f"{sigma} does not contain {SHADED_2314}")
    a = sigma.letters
    p = _next_larger(a, j, a[j])
    candidate = Permutation(_rotate_block(a, a[p - 1], j, p))
    if contains(candidate, SHADED_2314) and contains(candidate, SHADED_3124):
        return sigma
    return candidate


def alpha_24_to_23(sigma: Permutation) -> Permutation:
    """Map a permutation containing shaded 2413 to one containing shaded 2314, keeping des."""
    j = _first_occurrence_start(sigma, SHADED_2413)
    if j is None:
        raise NotInSourceClass(f"{sigma} does not contain {SHADED_2413}")
    a = list(sigma.letters)
    low, high = a[j - 1], a[j]
    larger = [m for m in range(j + 3, len(a) + 1) if a[m - 1] > low]
    if len(larger) == 1:
        swap = larger[0]
    else:
        r = next(m for m in range(j + 3, len(a) + 1) if low < a[m - 1] < high)
        q = r
        while q < len(a) and a[q - 1] < a[q] and low < a[q] < high:
            q += 1
        swap = q
    a[j], a[swap - 1] = a[swap - 1], a[j]
    return Permutation(tuple(a))


@dataclass
class AlphaAudit:
    """Findings of an exhaustive run of one map over its source class at a fixed n."""

    name: str
    n: int
    source_size: int = 0
    des_violation: Permutation | None = None
    target_violation: Permutation | None = None
    collision: tuple[Permutation, Permutation, Permutation] | None = None
    round_trip_failure: tuple[Permutation, Permutation, Permutation] | None = None

    @property
    def des_preserving(self) -> bool:
        return self.des_violation is None

    @property
    def lands_in_target(self) -> bool:
        return self.target_violation is None

    @property
    def injective(self) -> bool:
        return self.collision is None


_MAPS = {
    "alpha": (alpha_31_to_23, SHADED_3124, SHADED_2314),
    "alpha24": (alpha_24_to_23, SHADED_2413, SHADED_2314),
}


def alpha_audit(name: str, candidates) -> AlphaAudit:
    """Check des-preservation, landing, injectivity (and β∘α for ``alpha``) over ``candidates``.

    ``candidates`` is an iterable of permutations of one length; those outside
    the source class are skipped. Only the first witness of each failure is kept.
    """
    fn, source, target = _MAPS[name]
    audit: AlphaAudit | None = None
    images: dict[Permutation, Permutation] = {}
    for sigma in candidates:
        if audit is None:
            audit = AlphaAudit(name, sigma.n)
        if not contains(sigma, source):
            continue
        audit.source_size += 1
        image = fn(sigma)
        if audit.des_violation is None and _des(image.letters) != _des(sigma.letters):
            audit.des_violation = sigma
        if audit.target_violation is None and not contains(image, target):
            audit.target_violation = sigma
        if audit.collision is None and image in images:
            audit.collision = (images[image], sigma, image)
        images.setdefault(image, sigma)
        if name == "alpha" and audit.round_trip_failure is None:
            back = beta_23_to_31(image)
            if back != sigma:
                audit.round_trip_failure = (sigma, image, back)
    if audit is None:
        audit = AlphaAudit(name, 0)
    logger.debug(
        f"[BIJECTION] {name} n={audit.n}: source={audit.source_size} "
        f"des_ok={audit.des_preserving} target_ok={audit.lands_in_target} injective={audit.injective}"
    )
    return audit
