import unittest
import sys
import os
from itertools import permutations

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.bijections import (
    MOTZKIN_CLASS,
    RUNS_PATTERN,
    SHADED_2314,
    SHADED_3124,
    MotzkinPath,
    SetPartition,
    alpha_24_to_23,
    alpha_31_to_23,
    alpha_audit,
    avoider_from_motzkin,
    avoider_from_partition,
    beta_23_to_31,
    motzkin_from_avoider,
    partition_from_avoider,
)
from src.enumeration import AvoidanceQuery, avoiders
from src.errors import InvalidPartition, InvalidPath, NotInClass, NotInSourceClass
from src.patterns import PatternSet, avoids, contains
from src.perm_core import Permutation, stat
from src.sequences import motzkin_count, motzkin_number, stirling2


def P(text):
    return Permutation.parse(text)


def all_perms(n):
    return [Permutation(p) for p in permutations(range(1, n + 1))]


class TestSetPartitions(unittest.TestCase):
    def test_canonical_order(self):
        partition = SetPartition(((3, 4), (7, 2), (1, 6, 5)))
        self.assertEqual(partition.blocks, ((1, 5, 6), (2, 7), (3, 4)))
        self.assertEqual(str(partition), "{{1,5,6},{2,7},{3,4}}")
        self.assertEqual(len(partition), 3)
        self.assertEqual(partition.n, 7)
        self.assertEqual(SetPartition.parse("{{3,4},{2,7},{1,5,6}}"), partition)

    def test_invalid(self):
        with self.assertRaises(InvalidPartition):
            SetPartition(((1, 2), (2, 3)))
        with self.assertRaises(InvalidPartition):
            SetPartition(((1,), (3,)))
        with self.assertRaises(InvalidPartition):
            SetPartition(((1,), ()))

    def test_runs_of_an_avoider(self):
        sigma = P("3427156")
        partition = partition_from_avoider(sigma)
        self.assertEqual(str(partition), "{{1,5,6},{2,7},{3,4}}")
        self.assertEqual(len(partition), stat("des", sigma) + 1)
        self.assertEqual(avoider_from_partition(partition), sigma)

    def test_outside_the_class(self):
        with self.assertRaises(NotInClass):
            partition_from_avoider(P("132"))

    def test_empty(self):
        self.assertEqual(partition_from_avoider(Permutation(())), SetPartition(()))
        self.assertEqual(avoider_from_partition(SetPartition(())), Permutation(()))

    def test_round_trip_over_the_class(self):
        runs = PatternSet((RUNS_PATTERN,))
        for n in range(1, 7):
            by_blocks = {}
            for sigma in all_perms(n):
                if not avoids(sigma, runs):
                    continue
                partition = partition_from_avoider(sigma)
                self.assertEqual(avoider_from_partition(partition), sigma)
                by_blocks[len(partition)] = by_blocks.get(len(partition), 0) + 1
            self.assertEqual(by_blocks, {k: stirling2(n, k) for k in range(1, n + 1)})

    def test_image_avoids_the_runs_pattern(self):
        partition = SetPartition(((1, 3), (2, 5), (4,)))
        sigma = avoider_from_partition(partition)
        self.assertEqual(sigma, P("42513"))
        self.assertFalse(contains(sigma, RUNS_PATTERN))


class TestMotzkinPaths(unittest.TestCase):
    def test_validation(self):
        self.assertEqual(str(MotzkinPath.parse("HUUDHDHUHD")), "HUUDHDHUHD")
        with self.assertRaises(InvalidPath):
            MotzkinPath("DU")
        with self.assertRaises(InvalidPath):
            MotzkinPath("UUD")
        with self.assertRaises(InvalidPath):
            MotzkinPath("UXD")

    def test_profile_and_up_steps(self):
        path = MotzkinPath("UDH")
        self.assertEqual(path.height_profile(), [0, 1, 0, 0])
        self.assertEqual(path.up_steps, 1)

    def test_all_paths(self):
        for n in range(9):
            paths = list(MotzkinPath.all_paths(n))
            self.assertEqual(len(paths), motzkin_number(n))
            self.assertEqual(len(set(paths)), len(paths))
        by_ups = {}
        for path in MotzkinPath.all_paths(10):
            by_ups[path.up_steps] = by_ups.get(path.up_steps, 0) + 1
        self.assertEqual(by_ups[3], motzkin_count(10, 3))

    def test_small_examples(self):
        self.assertEqual(str(motzkin_from_avoider(P("213"))), "UDH")
        self.assertEqual(avoider_from_motzkin(MotzkinPath("UDH")), P("213"))
        self.assertEqual(str(motzkin_from_avoider(P("132"))), "HUD")
        self.assertEqual(avoider_from_motzkin("HUD"), P("132"))

    def test_outside_the_class(self):
        with self.assertRaises(NotInClass):
            motzkin_from_avoider(P("321"))

    def test_descent_tops_and_bottoms_of_members(self):
        for n in range(9):
            for sigma in avoiders(AvoidanceQuery(n, MOTZKIN_CLASS)):
                a = sigma.letters
                tops = [a[i] for i in range(n - 1) if a[i] > a[i + 1]]
                bottoms = [a[i + 1] for i in range(n - 1) if a[i] > a[i + 1]]
                self.assertFalse(set(tops) & set(bottoms), str(sigma))
                self.assertEqual(tops, sorted(tops), str(sigma))
                self.assertEqual(bottoms, sorted(bottoms), str(sigma))
                rest = [x for x in a if x not in tops]
                self.assertEqual(rest, sorted(rest), str(sigma))

    def test_round_trips(self):
        for n in range(7):
            members = [s for s in all_perms(n) if avoids(s, MOTZKIN_CLASS)]
            self.assertEqual(len(members), motzkin_number(n))
            for sigma in members:
                path = motzkin_from_avoider(sigma)
                self.assertEqual(path.up_steps, stat("des", sigma))
                self.assertEqual(avoider_from_motzkin(path), sigma)
            for path in MotzkinPath.all_paths(n):
                self.assertEqual(motzkin_from_avoider(avoider_from_motzkin(path)), path)


class TestShadedMaps(unittest.TestCase):
    def test_base_patterns(self):
        self.assertEqual(alpha_31_to_23(P("3124")), P("2314"))
        self.assertEqual(beta_23_to_31(P("2314")), P("3124"))
        self.assertEqual(alpha_24_to_23(P("2413")), P("2314"))

    def test_source_class_required(self):
        with self.assertRaises(NotInSourceClass):
            alpha_31_to_23(P("1234"))
        with self.assertRaises(NotInSourceClass):
            beta_23_to_31(P("3124"))
        with self.assertRaises(NotInSourceClass):
            alpha_24_to_23(P("1234"))

    def test_alpha_is_not_injective(self):
        self.assertEqual(alpha_31_to_23(P("3126457")), P("2316457"))
        self.assertEqual(alpha_31_to_23(P("2316457")), P("2316457"))

    def test_beta_does_not_always_undo_alpha(self):
        image = alpha_31_to_23(P("514236"))
        self.assertEqual(image, P("342516"))
        self.assertEqual(beta_23_to_31(image), P("342516"))

    def test_images_keep_des_and_land_in_the_target(self):
        for n in range(4, 7):
            for sigma in all_perms(n):
                if contains(sigma, SHADED_3124):
                    image = alpha_31_to_23(sigma)
                    self.assertEqual(stat("des", image), stat("des", sigma), str(sigma))
                    self.assertTrue(contains(image, SHADED_2314), str(sigma))

    def test_audit(self):
        audit = alpha_audit("alpha", all_perms(6))
        self.assertEqual(audit.n, 6)
        self.assertGreater(audit.source_size, 0)
        self.assertTrue(audit.des_preserving)
        self.assertTrue(audit.lands_in_target)

        audit24 = alpha_audit("alpha24", all_perms(5))
        self.assertTrue(audit24.des_preserving)
        self.assertTrue(audit24.lands_in_target)

        seven = alpha_audit("alpha", [P("3126457"), P("2316457")])
        self.assertFalse(seven.injective)
        self.assertEqual(seven.collision, (P("3126457"), P("2316457"), P("2316457")))

    def test_audit_skips_outsiders(self):
        audit = alpha_audit("alpha", [P("123"), P("321")])
        self.assertEqual((audit.n, audit.source_size), (3, 0))
        self.assertTrue(audit.injective)
        self.assertEqual(alpha_audit("alpha", []).n, 0)


if __name__ == "__main__":
    unittest.main()
