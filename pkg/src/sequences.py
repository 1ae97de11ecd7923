"""
Reference numbers and polynomials the avoidance counts are compared against:
Catalan, Narayana, Stirling (second kind), Motzkin, Eulerian, q-factorials and
the closed form for West-2-stack-sortable permutations by descents.
"""

from functools import lru_cache
from math import factorial

from scipy.special import comb

from .errors import DomainError, NonIntegerTerm
from .qpoly import QPolynomial


def catalan(n: int) -> int:
    if n < 0:
        raise DomainError(f"catalan({n}): n must be >= 0")
    return comb(2 * n, n, exact=True) // (n + 1)


def narayana(n: int, k: int) -> int:
    """N(n,k) = C(n,k) C(n,k+1) / n, the number of 312-avoiders with k descents."""
    if n < 1 or not 0 <= k <= n - 1:
        raise DomainError(f"narayana({n},{k}): need n >= 1 and 0 <= k <= n-1")
    return comb(n, k, exact=True) * comb(n, k + 1, exact=True) // n


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def stirling2(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise DomainError(f"stirling2({n},{k}): need 0 <= k <= n")
    return _stirling2(n, k)


def motzkin_count(n: int, k: int) -> int:
    """Motzkin paths of length n with exactly k up-steps (dynamic program)."""
    if n < 0 or k < 0:
        raise DomainError(f"motzkin_count({n},{k}): n and k must be >= 0")
    if 2 * k > n:
        return 0
    # states[(height, ups)] -> number of prefixes
    states = {(0, 0): 1}
    for step in range(n):
        remaining = n - step - 1
        nxt: dict[tuple[int, int], int] = {}
        for (height, ups), count in states.items():
            moves = [(height, ups)]
            if ups < k:
                moves.append((height + 1, ups + 1))
            if height > 0:
                moves.append((height - 1, ups))
            for state in moves:
                if state[0] <= remaining:
                    nxt[state] = nxt.get(state, 0) + count
        states = nxt
    return states.get((0, k), 0)


def motzkin_closed_form(n: int, k: int) -> int:
    """C(n, 2k) * catalan(k); independent oracle for motzkin_count."""
    if 2 * k > n:
        return 0
    return comb(n, 2 * k, exact=True) * catalan(k)


def motzkin_number(n: int) -> int:
    return sum(motzkin_count(n, k) for k in range(n // 2 + 1))


@lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple[int, ...]:
    if n <= 1:
        return (1,)
    prev = _eulerian_row(n - 1)
    row = []
    for k in range(n):
        stay = (k + 1) * prev[k] if k < len(prev) else 0
        grow = (n - k) * prev[k - 1] if 0 <= k - 1 < len(prev) else 0
        row.append(stay + grow)
    return tuple(row)


def eulerian_poly(n: int, shifted: bool = False) -> QPolynomial:
    """A_n(q) = sum over S_n of q^des, constant term 1 for n >= 1.

    ``shifted`` gives the other common convention, sum of q^(des+1).
    """
    if n < 0:
        raise DomainError(f"eulerian_poly({n}): n must be >= 0")
    poly = QPolynomial(_eulerian_row(n))
    return poly.shift() if shifted and n >= 1 else poly


def q_integer(n: int) -> QPolynomial:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise DomainError(f"q_integer({n}): n must be >= 0")
    return QPolynomial((1,) * n)


def q_factorial(n: int) -> QPolynomial:
    if n < 0:
        raise DomainError(f"q_factorial({n}): n must be >= 0")
    result = QPolynomial.one()
    for i in range(1, n + 1):
        result = result * q_integer(i)
    return result


def bona_w2_poly(n: int) -> QPolynomial:
    """Descent polynomial of West-2-stack-sortable permutations, by exact division."""
    if n < 1:
        raise DomainError(f"bona_w2_poly({n}): n must be >= 1")
    coeffs = []
    for k in range(n):
        numerator = factorial(n + k) * factorial(2 * n - k - 1)
        denominator = (
            factorial(k + 1)
            * factorial(n - k)
            * factorial(2 * k + 1)
            * factorial(2 * n - 2 * k - 1)
        )
        quotient, remainder = divmod(numerator, denominator)
        if remainder:
            raise NonIntegerTerm(f"term k={k} of the n={n} polynomial is {numerator}/{denominator}")
        coeffs.append(quotient)
    return QPolynomial(tuple(coeffs))


def west_two_sortable_count(n: int) -> int:
    """2 (3n)! / ((n+1)! (2n+1)!)."""
    if n < 0:
        raise DomainError(f"west_two_sortable_count({n}): n must be >= 0")
    if n == 0:
        return 1
    return 2 * factorial(3 * n) // (factorial(n + 1) * factorial(2 * n + 1))
