import unittest
import sys
import os

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.errors import DomainError
from src.qpoly import QPolynomial
from src.sequences import (
    bona_w2_poly,
    catalan,
    eulerian_poly,
    motzkin_closed_form,
    motzkin_count,
    motzkin_number,
    narayana,
    q_factorial,
    q_integer,
    stirling2,
    west_two_sortable_count,
)


class TestQPolynomial(unittest.TestCase):
    def test_canonical_form(self):
        self.assertEqual(QPolynomial((1, 2, 0, 0)).coeffs, (1, 2))
        self.assertEqual(QPolynomial(()).coeffs, ())
        self.assertEqual(str(QPolynomial()), "0")
        self.assertEqual(str(QPolynomial((1, 10, 11, 1))), "1+10q+11q^2+q^3")
        self.assertEqual(str(QPolynomial((0, 3))), "3q")
        with self.assertRaises(ValueError):
            QPolynomial((1, -1))

    def test_arithmetic(self):
        a = QPolynomial((1, 1))
        self.assertEqual(a * a, QPolynomial((1, 2, 1)))
        self.assertEqual(a + QPolynomial((0, 0, 5)), QPolynomial((1, 1, 5)))
        self.assertEqual(4 * a, QPolynomial((4, 4)))
        self.assertEqual(a.shift(2), QPolynomial((0, 0, 1, 1)))
        self.assertEqual(QPolynomial.from_counts({0: 2, 3: 1}).to_list(), [2, 0, 0, 1])
        self.assertEqual(QPolynomial.monomial(2, 5).coefficient(2), 5)
        self.assertEqual(QPolynomial((1, 84, 1414)).total(), 1499)

    def test_big_coefficients_stay_exact(self):
        big = QPolynomial((10**30, 1))
        self.assertEqual((big * big).coeffs[0], 10**60)


class TestReferenceSequences(unittest.TestCase):
    def test_catalan_and_narayana(self):
        self.assertEqual([catalan(n) for n in range(6)], [1, 1, 2, 5, 14, 42])
        self.assertEqual(narayana(4, 1), 6)
        for n in range(1, 10):
            self.assertEqual(narayana(n, 0), 1)
            self.assertEqual(sum(narayana(n, k) for k in range(n)), catalan(n))
        with self.assertRaises(DomainError):
            narayana(0, 0)
        with self.assertRaises(DomainError):
            catalan(-1)

    def test_stirling(self):
        self.assertEqual(stirling2(4, 2), 7)
        self.assertEqual(stirling2(6, 6), 1)
        self.assertEqual(stirling2(6, 1), 1)
        self.assertEqual(stirling2(3, 0), 0)
        self.assertEqual(stirling2(0, 0), 1)
        with self.assertRaises(DomainError):
            stirling2(2, 3)

    def test_motzkin(self):
        self.assertEqual(motzkin_count(10, 3), 1050)
        self.assertEqual(motzkin_count(7, 0), 1)
        self.assertEqual(motzkin_count(5, 3), 0)
        self.assertEqual(motzkin_number(4), 9)
        self.assertEqual([motzkin_number(n) for n in range(8)], [1, 1, 2, 4, 9, 21, 51, 127])
        for n in range(11):
            for k in range(n // 2 + 1):
                self.assertEqual(motzkin_count(n, k), motzkin_closed_form(n, k))

    def test_eulerian(self):
        self.assertEqual(eulerian_poly(3).to_list(), [1, 4, 1])
        self.assertEqual(eulerian_poly(1), QPolynomial.one())
        self.assertEqual(eulerian_poly(0), QPolynomial.one())
        self.assertEqual(eulerian_poly(4).to_list(), [1, 11, 11, 1])
        self.assertEqual(eulerian_poly(3, shifted=True).to_list(), [0, 1, 4, 1])
        self.assertEqual(eulerian_poly(6).total(), 720)

    def test_q_analogues(self):
        self.assertEqual(q_integer(3).to_list(), [1, 1, 1])
        self.assertEqual(q_factorial(3).to_list(), [1, 2, 2, 1])
        self.assertEqual(q_factorial(1), QPolynomial.one())
        self.assertEqual(q_factorial(5).total(), 120)

    def test_two_stack_sortable(self):
        self.assertEqual(bona_w2_poly(1), QPolynomial.one())
        self.assertEqual(bona_w2_poly(2).to_list(), [1, 1])
        self.assertEqual(bona_w2_poly(3).to_list(), [1, 4, 1])
        self.assertEqual(bona_w2_poly(4).to_list(), [1, 10, 10, 1])
        self.assertEqual([west_two_sortable_count(n) for n in range(6)], [1, 1, 2, 6, 22, 91])
        for n in range(1, 12):
            self.assertEqual(bona_w2_poly(n).total(), west_two_sortable_count(n))
        with self.assertRaises(DomainError):
            bona_w2_poly(0)


if __name__ == "__main__":
    unittest.main()
