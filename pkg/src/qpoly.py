"""Dense polynomials in q with nonnegative integer coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    values = [int(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True, slots=True)
class QPolynomial:
    """Coefficient tuple indexed by exponent; the zero polynomial is ``()``.

    Coefficients are Python ints, so they never overflow.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        trimmed = _trim(self.coeffs)
        if any(c < 0 for c in trimmed):
            raise ValueError(f"negative coefficient in {trimmed}")
        object.__setattr__(self, "coeffs", trimmed)

    @classmethod
    def one(cls) -> QPolynomial:
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> QPolynomial:
        return cls((0,) * exponent + (coefficient,))

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> QPolynomial:
        if not counts:
            return cls()
        size = max(counts) + 1
        return cls(tuple(counts.get(e, 0) for e in range(size)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, exponent: int) -> int:
        return self.coeffs[exponent] if 0 <= exponent < len(self.coeffs) else 0

    def total(self) -> int:
        """Sum of the coefficients, i.e. the value at q = 1."""
        return sum(self.coeffs)

    def __add__(self, other: QPolynomial) -> QPolynomial:
        size = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(tuple(self.coefficient(e) + other.coefficient(e) for e in range(size)))

    def __mul__(self, other: QPolynomial | int) -> QPolynomial:
        if isinstance(other, int):
            return QPolynomial(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return QPolynomial(tuple(product))

    __rmul__ = __mul__

    def shift(self, by: int = 1) -> QPolynomial:
        """Multiply by q**by."""
        if not self.coeffs:
            return self
        return QPolynomial((0,) * by + self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                terms.append(str(c))
                continue
            power = "q" if e == 1 else f"q^{e}"
            terms.append(power if c == 1 else f"{c}{power}")
        return "+".join(terms)

    def to_list(self) -> list[int]:
        return list(self.coeffs)
