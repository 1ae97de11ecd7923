"""
Permutations, standardization, the dihedral symmetries of the plot and the
four classical statistics (des, inv, maj, exc).

Positions and values are 1-indexed in every public function. The private
``_des``/``_inv``/... helpers work on bare tuples and are what the
enumerators call in their inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, StrEnum
from typing import Sequence

import numpy as np

from . import logger_config
from . import notation
from .errors import DuplicateLetter, InvalidPermutation

logger = logger_config.get_logger(__name__)


@dataclass(frozen=True, slots=True, order=True)
class Permutation:
    """A permutation in one-line notation a_1 ... a_n."""

    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        object.__setattr__(self, "letters", letters)
        n = len(letters)
        seen = set()
        for a in letters:
            if a in seen:
                raise DuplicateLetter(a)
            if not 1 <= a <= n:
                raise InvalidPermutation(f"letter {a} outside 1..{n}")
            seen.add(a)

    @property
    def n(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(a) for a in self.letters)
        return ",".join(str(a) for a in self.letters)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Read contiguous (``342516``) or comma (``1,4,2,6``) notation."""
        return cls(notation.parse(text, "perm_text"))


@dataclass(frozen=True, slots=True)
class Word:
    """A word with distinct positive letters, i.e. an element of S_A for its support A."""

    letters: tuple[int, ...]
    support: frozenset[int] = field(init=False, compare=False)

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        object.__setattr__(self, "letters", letters)
        seen = set()
        for a in letters:
            if a in seen:
                raise DuplicateLetter(a)
            if a < 1:
                raise InvalidPermutation(f"letter {a} is not positive")
            seen.add(a)
        object.__setattr__(self, "support", frozenset(seen))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if all(a <= 9 for a in self.letters):
            return "".join(str(a) for a in self.letters)
        return ",".join(str(a) for a in self.letters)

    @classmethod
    def parse(cls, text: str) -> Word:
        return cls(notation.parse(text, "perm_text"))


def _as_letters(w: Word | Permutation | Sequence[int]) -> tuple[int, ...]:
    if isinstance(w, (Word, Permutation)):
        return w.letters
    return tuple(w)


def _standardize(letters: Sequence[int]) -> tuple[int, ...]:
    rank = {a: r for r, a in enumerate(sorted(letters), start=1)}
    return tuple(rank[a] for a in letters)


def standardize(w: Word | Permutation | Sequence[int]) -> Permutation:
    """Relabel a word with distinct letters to the permutation with the same relative order."""
    letters = _as_letters(w)
    if len(set(letters)) != len(letters):
        seen = set()
        for a in letters:
            if a in seen:
                raise DuplicateLetter(a)
            seen.add(a)
    return Permutation(_standardize(letters))


class DihedralElement(Enum):
    """The eight symmetries of the square acting on a permutation plot.

    Each value is the 2x2 integer matrix acting on centred coordinates
    (2i - n - 1, 2a - n - 1) of a point (i, a).
    """

    R0 = ((1, 0), (0, 1))
    R90 = ((0, -1), (1, 0))
    R180 = ((-1, 0), (0, -1))
    R270 = ((0, 1), (-1, 0))
    ANTIDIAGONAL = ((0, -1), (-1, 0))
    COMPLEMENT = ((1, 0), (0, -1))
    DIAGONAL = ((0, 1), (1, 0))
    REVERSE = ((-1, 0), (0, 1))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.value, dtype=np.int64)

    def compose(self, other: DihedralElement) -> DihedralElement:
        """The element ``self ∘ other`` (apply ``other`` first)."""
        return compose_dihedral(self, other)

    def inverse(self) -> DihedralElement:
        return inverse_element(self)

    @classmethod
    def parse(cls, name: str) -> DihedralElement:
        """Accept ``R90``, ``R_180``, ``r_0``, ``r_inf``, ``reverse``, ``complement``, ...

        Upper-case R names are rotations, lower-case r names are reflections.
        """
        key = name.strip().replace("_", "").replace("{", "").replace("}", "")
        if key in _ROTATIONS:
            return _ROTATIONS[key]
        try:
            return _ALIASES[key.lower()]
        except KeyError:
            known = sorted(set(_ROTATIONS) | set(_ALIASES))
            raise ValueError(
                f"unknown dihedral element {name!r}; expected one of {', '.join(known)}"
            ) from None


_ALIASES = {
    "r0": DihedralElement.COMPLEMENT,
    "complement": DihedralElement.COMPLEMENT,
    "rinf": DihedralElement.REVERSE,
    "r∞": DihedralElement.REVERSE,
    "reverse": DihedralElement.REVERSE,
    "r1": DihedralElement.DIAGONAL,
    "inverse": DihedralElement.DIAGONAL,
    "r-1": DihedralElement.ANTIDIAGONAL,
    "id": DihedralElement.R0,
    "identity": DihedralElement.R0,
    "rot0": DihedralElement.R0,
    "rot90": DihedralElement.R90,
    "rot180": DihedralElement.R180,
    "rot270": DihedralElement.R270,
}
_ROTATIONS = {
    "R0": DihedralElement.R0,
    "R90": DihedralElement.R90,
    "R180": DihedralElement.R180,
    "R270": DihedralElement.R270,
}

_BY_MATRIX = {el.value: el for el in DihedralElement}


def compose_dihedral(f: DihedralElement, g: DihedralElement) -> DihedralElement:
    """Group product f∘g; closed on the eight elements."""
    product = f.matrix @ g.matrix
    return _BY_MATRIX[tuple(tuple(int(x) for x in row) for row in product)]


def inverse_element(f: DihedralElement) -> DihedralElement:
    for g in DihedralElement:
        if compose_dihedral(f, g) is DihedralElement.R0:
            return g
    raise AssertionError("dihedral group is not closed")


def _apply_dihedral(f: DihedralElement, letters: tuple[int, ...]) -> tuple[int, ...]:
    n = len(letters)
    if n == 0 or f is DihedralElement.R0:
        return letters
    positions = np.arange(1, n + 1, dtype=np.int64)
    values = np.asarray(letters, dtype=np.int64)
    centred = np.vstack((2 * positions - (n + 1), 2 * values - (n + 1)))
    moved = f.matrix @ centred
    new_positions = (moved[0] + n + 1) // 2
    new_values = (moved[1] + n + 1) // 2
    result = np.empty(n, dtype=np.int64)
    result[new_positions - 1] = new_values
    return tuple(int(a) for a in result)


def apply_dihedral(f: DihedralElement, sigma: Permutation) -> Permutation:
    """Apply a plot symmetry to σ and read the one-line notation back."""
    return Permutation(_apply_dihedral(f, sigma.letters))


def apply_dihedral_relative(f: DihedralElement, w: Word | Sequence[int]) -> Word:
    """The word over the same support whose standardization is f(std(w))."""
    word = w if isinstance(w, Word) else Word(tuple(w))
    support = sorted(word.letters)
    moved = _apply_dihedral(f, _standardize(word.letters))
    return Word(tuple(support[v - 1] for v in moved))


def reverse(sigma: Permutation) -> Permutation:
    return Permutation(sigma.letters[::-1])


def complement(sigma: Permutation) -> Permutation:
    k = sigma.n + 1
    return Permutation(tuple(k - a for a in sigma.letters))


def dihedral_orbit(sigma: Permutation) -> list[Permutation]:
    """Distinct images of σ under the eight symmetries, sorted."""
    return sorted({apply_dihedral(f, sigma) for f in DihedralElement})


class StatKind(StrEnum):
    DES = "des"
    INV = "inv"
    MAJ = "maj"
    EXC = "exc"


def _descents(letters: Sequence[int]) -> list[int]:
    return [i for i in range(1, len(letters)) if letters[i - 1] > letters[i]]


def _des(letters: Sequence[int]) -> int:
    return sum(1 for i in range(1, len(letters)) if letters[i - 1] > letters[i])


def _maj(letters: Sequence[int]) -> int:
    return sum(i for i in range(1, len(letters)) if letters[i - 1] > letters[i])


def _inv(letters: Sequence[int]) -> int:
    n = len(letters)
    return sum(1 for i in range(n) for j in range(i + 1, n) if letters[i] > letters[j])


def _exc(letters: Sequence[int]) -> int:
    return sum(1 for i, a in enumerate(letters, start=1) if a > i)


STAT_FUNCTIONS = {
    StatKind.DES: _des,
    StatKind.INV: _inv,
    StatKind.MAJ: _maj,
    StatKind.EXC: _exc,
}


def descent_set(sigma: Permutation) -> frozenset[int]:
    """Des(σ) = {i in [n-1] : a_i > a_{i+1}}."""
    return frozenset(_descents(sigma.letters))


def stat(kind: StatKind | str, sigma: Permutation) -> int:
    return STAT_FUNCTIONS[StatKind(kind)](sigma.letters)


def stat_vector(sigma: Permutation) -> dict[StatKind, int]:
    return {kind: fn(sigma.letters) for kind, fn in STAT_FUNCTIONS.items()}


def descent_tops(sigma: Permutation) -> frozenset[int]:
    a = sigma.letters
    return frozenset(a[i - 1] for i in _descents(a))


def descent_bottoms(sigma: Permutation) -> frozenset[int]:
    a = sigma.letters
    return frozenset(a[i] for i in _descents(a))


def valleys(sigma: Permutation) -> frozenset[int]:
    """Positions i with a_{i-1} > a_i < a_{i+1}."""
    a = sigma.letters
    return frozenset(i for i in range(2, len(a)) if a[i - 2] > a[i - 1] < a[i])

