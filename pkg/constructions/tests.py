from fractions import Fraction

from django.test import SimpleTestCase

from group_core.exceptions import Degenerate, SizeOutOfRange
from group_core.services import GroupSpec
from repfn.services import diff_set, mu

from .serializers import Measure0WitnessSerializer
from .services import (interval_set, lambda_size, measure0_check, measure0_witness, mian_chowla,
                       random_set, sidon, sidon_check, tightness_statistics)


class SidonTests(SimpleTestCase):

    def test_greedy_prefix(self):
        self.assertEqual(mian_chowla(4), [0, 1, 3, 7])
        self.assertEqual(mian_chowla(2), [0, 1])
        self.assertEqual(mian_chowla(6), [0, 1, 3, 7, 12, 20])

    def test_differences_distinct(self):
        for size in (8, 20, 40, 64):
            terms = mian_chowla(size)
            differences = [a - b for a in terms for b in terms if a != b]
            self.assertEqual(len(differences), len(set(differences)))

    def test_mu_is_one(self):
        for size in (2, 5, 12, 30):
            self.assertEqual(mu(sidon(size)), 1)
        self.assertEqual(sidon_check(16).verdict, 'holds')

    def test_size_zero(self):
        with self.assertRaises(Degenerate):
            sidon(0)


class Measure0Tests(SimpleTestCase):

    def test_quarter(self):
        witness = measure0_witness(Fraction(1, 4))
        self.assertEqual(witness.n, 6)
        self.assertEqual(lambda_size(Fraction(1, 4)), 4)
        self.assertEqual(witness.multiplier, 21)
        self.assertEqual(witness.lambda_set.elements(), [0, 21, 63, 147])
        self.assertEqual(len(witness.A), 24)
        self.assertEqual(witness.difference_size, 11 * 13)
        self.assertEqual(witness.bound, Fraction(143, 2))
        # only the differences coming from P - P clear the threshold
        self.assertEqual(witness.threshold_count, 9)
        self.assertTrue(all(witness.invariants.values()))

    def test_eighth(self):
        witness = measure0_witness('1/8')
        s = len(witness.base)
        self.assertEqual(witness.n, 10)
        self.assertGreater((s - 1) ** 2, 16)
        self.assertEqual(witness.difference_size, (2 * witness.n - 1) * (s * s - s + 1))
        self.assertEqual(measure0_check(witness).verdict, 'holds')

    def test_difference_set_matches_formula(self):
        witness = measure0_witness(Fraction(1, 3))
        self.assertEqual(len(diff_set(witness.A)), witness.difference_size)

    def test_epsilon_range(self):
        with self.assertRaises(Degenerate):
            measure0_witness(1)
        with self.assertRaises(Degenerate):
            measure0_witness(0)

    def test_serializer(self):
        data = Measure0WitnessSerializer(measure0_witness(Fraction(1, 4))).data
        self.assertEqual(data['epsilon'], '1/4')
        self.assertEqual(data['bound'], '143/2')
        self.assertEqual(data['base'], [0, 1, 3, 7])
        self.assertEqual(data['multiplier'], 21)
        self.assertEqual(data['set']['group'], {'kind': 'integer_window', 'halfwidth': 154})


class FamilyTests(SimpleTestCase):

    def setUp(self):
        self.group = GroupSpec.cyclic(101)

    def test_interval(self):
        A = interval_set(self.group, 1, 10)
        self.assertEqual(len(A), 10)
        self.assertEqual(len(diff_set(A)), 19)

    def test_random_set_is_deterministic(self):
        self.assertEqual(random_set(self.group, 10, 7), random_set(self.group, 10, 7))
        self.assertEqual(len(random_set(self.group, 10, 7)), 10)
        self.assertNotEqual(random_set(self.group, 10, 7), random_set(self.group, 10, 8))

    def test_random_set_size(self):
        with self.assertRaises(SizeOutOfRange):
            random_set(self.group, 102, 0)

    def test_tightness_statistics(self):
        stats = tightness_statistics(interval_set(self.group, 1, 10))
        self.assertEqual(stats['mu'], 9)
        self.assertEqual(stats['twice_average'], Fraction(200, 19))
        self.assertEqual(stats['ratio'], Fraction(171, 200))
