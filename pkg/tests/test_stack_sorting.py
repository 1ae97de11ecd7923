import unittest
import sys
import os
from itertools import permutations

from hypothesis import given, strategies as st

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.enumeration import count_avoiders, stat_polynomial
from src.errors import DomainError
from src.patterns import avoids, parse_pattern_set
from src.perm_core import Permutation, stat
from src.sequences import bona_w2_poly, catalan, west_two_sortable_count
from src.stack_sorting import (
    WEST_TWO_PARTNER,
    WEST_TWO_SORTABLE,
    is_west_t_stack_sortable,
    sortability_index,
    stack_sort,
    stack_sort_power,
)


def P(text):
    return Permutation.parse(text)


def all_perms(n):
    return [Permutation(p) for p in permutations(range(1, n + 1))]


perms = st.integers(min_value=0, max_value=8).flatmap(
    lambda n: st.permutations(range(1, n + 1))
).map(lambda letters: Permutation(tuple(letters)))


class TestStackSort(unittest.TestCase):
    def test_single_pass(self):
        self.assertEqual(stack_sort(P("231")), P("213"))
        self.assertEqual(stack_sort(P("213")), P("123"))
        self.assertEqual(stack_sort(P("3241")), P("2314"))
        self.assertEqual(stack_sort(Permutation(())), Permutation(()))

    def test_powers(self):
        self.assertEqual(stack_sort_power(P("231"), 0), P("231"))
        self.assertEqual(stack_sort_power(P("231"), 2), P("123"))
        self.assertEqual(stack_sort_power(P("3241"), 2), P("2134"))
        with self.assertRaises(DomainError):
            stack_sort_power(P("21"), -1)

    def test_sortability(self):
        self.assertFalse(is_west_t_stack_sortable(P("231"), 1))
        self.assertTrue(is_west_t_stack_sortable(P("231"), 2))
        self.assertEqual(sortability_index(P("231")), 2)
        self.assertFalse(is_west_t_stack_sortable(P("3241"), 2))
        self.assertEqual(sortability_index(P("3241")), 3)
        self.assertEqual(sortability_index(Permutation.identity(4)), 0)
        self.assertEqual(sortability_index(Permutation(())), 0)

    def test_each_pass_removes_inversions(self):
        for n in range(9):
            for sigma in all_perms(n):
                if sigma == Permutation.identity(n):
                    self.assertEqual(stack_sort(sigma), sigma)
                else:
                    self.assertLess(stat("inv", stack_sort(sigma)), stat("inv", sigma), str(sigma))

    @given(perms)
    def test_largest_letter_moves_to_the_end(self, sigma):
        if sigma.n:
            self.assertEqual(stack_sort(sigma).letters[-1], sigma.n)

    @given(perms)
    def test_index_bounded(self, sigma):
        self.assertLessEqual(sortability_index(sigma), max(sigma.n - 1, 0))

    def test_one_stack_sortable_is_avoiding_231(self):
        av_231 = parse_pattern_set("231")
        for n in range(7):
            sortable = [s for s in all_perms(n) if is_west_t_stack_sortable(s, 1)]
            self.assertEqual(sortable, [s for s in all_perms(n) if avoids(s, av_231)])
            self.assertEqual(len(sortable), catalan(n))


class TestTwoStackSortable(unittest.TestCase):
    def test_pattern_characterisation(self):
        for n in range(7):
            for sigma in all_perms(n):
                self.assertEqual(is_west_t_stack_sortable(sigma, 2), avoids(sigma, WEST_TWO_SORTABLE), str(sigma))

    def test_counts(self):
        for n in range(7):
            self.assertEqual(count_avoiders(n, WEST_TWO_SORTABLE), west_two_sortable_count(n))

    def test_descent_polynomial(self):
        for n in range(1, 8):
            self.assertEqual(stat_polynomial(n, WEST_TWO_SORTABLE), bona_w2_poly(n))

    def test_partner_class(self):
        self.assertEqual(str(WEST_TWO_PARTNER), "2413; 3142|(2,2)")
        for n in range(1, 8):
            self.assertEqual(stat_polynomial(n, WEST_TWO_PARTNER), bona_w2_poly(n))


if __name__ == "__main__":
    unittest.main()
