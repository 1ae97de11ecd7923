"""West's stack-sorting operator and t-stack-sortability."""

from __future__ import annotations

from .errors import DomainError
from .patterns import ClassicalPattern, MeshPattern, PatternSet
from .perm_core import Permutation

# the 2-stack-sortable class
WEST_TWO_SORTABLE = PatternSet(
    (
        ClassicalPattern(Permutation((2, 3, 4, 1))),
        MeshPattern(Permutation((3, 2, 4, 1)), frozenset({(1, 4)})),
    )
)
# conjectured des-Wilf partner of the class above
WEST_TWO_PARTNER = PatternSet(
    (
        ClassicalPattern(Permutation((2, 4, 1, 3))),
        MeshPattern(Permutation((3, 1, 4, 2)), frozenset({(2, 2)})),
    )
)


def _gamma(letters: tuple[int, ...]) -> tuple[int, ...]:
    if len(letters) <= 1:
        return letters
    top = max(letters)
    i = letters.index(top)
    return _gamma(letters[:i]) + _gamma(letters[i + 1:]) + (top,)


def stack_sort(sigma: Permutation) -> Permutation:
    """Γ(L n R) = Γ(L) Γ(R) n."""
    return Permutation(_gamma(sigma.letters))


def stack_sort_power(sigma: Permutation, t: int) -> Permutation:
    if t < 0:
        raise DomainError(f"t must be >= 0 (got {t})")
    letters = sigma.letters
    for _ in range(t):
        letters = _gamma(letters)
    return Permutation(letters)


def is_west_t_stack_sortable(sigma: Permutation, t: int) -> bool:
    return stack_sort_power(sigma, t) == Permutation.identity(sigma.n)


def sortability_index(sigma: Permutation) -> int:
    """Least t with Γ^t(σ) the identity; at most n - 1."""
    identity = tuple(range(1, sigma.n + 1))
    letters = sigma.letters
    t = 0
    while letters != identity:
        letters = _gamma(letters)
        t += 1
    return t
