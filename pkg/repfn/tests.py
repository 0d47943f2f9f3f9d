import numpy as np
from django.test import SimpleTestCase, override_settings

from group_core.exceptions import CapExceeded, Degenerate, EmptySet, GroupMismatch, WindowOverflow
from group_core.services import GroupSpec, GSet, interval

from .serializers import RepTableSerializer, rep_table_csv
from .services import (diff_set, higher_rep, mu, mu_k, mu_k_witness, mu_witness, rep_table,
                       support_size_higher)


def window_set(elements, halfwidth=8):
    return GSet.from_elements(GroupSpec.integer_window(halfwidth), elements)


def seeded_set(n, size, seed):
    rng = np.random.default_rng(seed)
    return GSet.from_elements(GroupSpec.cyclic(n), rng.choice(n, size=size, replace=False).tolist())


class DiffSetTests(SimpleTestCase):

    def test_window_diff_set(self):
        D = diff_set(window_set([0, 1, 3]))
        self.assertEqual(D.elements(), [-3, -2, -1, 0, 1, 2, 3])

    def test_interval_diff_set(self):
        for n in (1, 5, 10):
            A = interval(GroupSpec.cyclic(101), 1, n)
            self.assertEqual(len(diff_set(A)), 2 * n - 1)

    def test_cyclic_diff_set(self):
        self.assertEqual(diff_set(GSet.from_elements(GroupSpec.cyclic(5), [0, 1])).elements(), [0, 1, 4])

    def test_window_escape(self):
        with self.assertRaises(WindowOverflow):
            diff_set(window_set([-3, 3], halfwidth=3))

    def test_empty(self):
        with self.assertRaises(EmptySet):
            diff_set(GSet.empty(GroupSpec.cyclic(5)))

    def test_cauchy_davenport(self):
        for seed in range(20):
            A = seeded_set(31, 2 + seed % 10, seed)
            self.assertGreaterEqual(len(diff_set(A)), min(31, 2 * len(A) - 1))


class RepTableTests(SimpleTestCase):

    def test_sidon_counts(self):
        table = rep_table(window_set([0, 1, 3]))
        self.assertEqual([table.count(d) for d in range(4)], [3, 1, 1, 1])
        self.assertEqual(table.count(-2), 1)
        self.assertEqual(table.count(4), 0)

    def test_interval_counts(self):
        table = rep_table(window_set([0, 1, 2]))
        self.assertEqual(table.count(1), 2)
        self.assertEqual(table.count(2), 1)

    def test_table_invariants(self):
        for seed in range(10):
            A = seeded_set(29, 3 + seed, seed)
            table = rep_table(A)
            self.assertEqual(table.total(), len(A) ** 2)
            self.assertEqual(table.count(0), len(A))
            for d in range(29):
                self.assertEqual(table.count(d), table.count((-d) % 29))
                self.assertLessEqual(table.count(d), len(A))

    def test_support_is_diff_set(self):
        A = seeded_set(23, 6, 3)
        self.assertEqual(rep_table(A).support(), diff_set(A))

    def test_fft_matches_direct(self):
        A = seeded_set(4096, 1100, 11)
        self.assertEqual(rep_table(A, 'fft').counts, rep_table(A, 'direct').counts)

    def test_fft_matches_direct_on_product(self):
        g = GroupSpec.product(8, 16)
        A = GSet.from_elements(g, [0, 3, 17, 40, 41, 99, 127])
        self.assertEqual(rep_table(A, 'fft').counts, rep_table(A, 'direct').counts)

    def test_fft_refuses_windows(self):
        with self.assertRaises(GroupMismatch):
            rep_table(window_set([0, 1]), 'fft')

    def test_csv_export(self):
        text = rep_table_csv(rep_table(window_set([0, 1])))
        self.assertEqual(text, 'element,count\n-1,1\n0,2\n1,1\n')

    def test_json_export(self):
        data = RepTableSerializer(rep_table(GSet.from_elements(GroupSpec.cyclic(5), [0, 1]))).data
        self.assertEqual(data['total'], 4)
        self.assertEqual(data['counts'][0], {'element': 0, 'count': 2})


class MuTests(SimpleTestCase):

    def test_interval(self):
        self.assertEqual(mu(window_set([0, 1, 2])), 2)

    def test_sidon(self):
        self.assertEqual(mu(window_set([0, 1, 3])), 1)

    def test_long_interval(self):
        A = interval(GroupSpec.cyclic(101), 1, 10)
        value, witness = mu_witness(A)
        self.assertEqual(value, 9)
        self.assertIn(witness, (1, 100))

    def test_singleton_is_degenerate(self):
        with self.assertRaises(Degenerate):
            mu(window_set([0]))


class HigherRepTests(SimpleTestCase):

    def test_triple_intersection(self):
        table = higher_rep(window_set([0, 1, 2]), 3)
        self.assertEqual(table.get((1, 2)), 1)

    def test_empty_intersection_is_absent(self):
        table = higher_rep(window_set([0, 1]), 3)
        self.assertEqual(table.get((1, -1)), 0)
        self.assertNotIn((1, -1), table.entries)

    def test_arity_two_matches_rep_table(self):
        A = seeded_set(17, 6, 5)
        table = rep_table(A)
        higher = higher_rep(A, 2)
        for d in range(17):
            self.assertEqual(higher.get((d,)), table.count(d))

    def test_total_mass(self):
        for k in (2, 3, 4):
            A = seeded_set(13, 5, k)
            self.assertEqual(higher_rep(A, k).total_mass(), len(A) ** k)

    def test_support_sizes(self):
        self.assertEqual(support_size_higher(window_set([0, 1]), 3), 7)
        self.assertEqual(support_size_higher(window_set([4]), 2), 1)
        A = GSet.from_elements(GroupSpec.cyclic(7), [0, 1, 2])
        self.assertEqual(support_size_higher(A, 3), 19)

    def test_arity_must_be_at_least_two(self):
        with self.assertRaises(Degenerate):
            higher_rep(window_set([0, 1]), 1)

    @override_settings(DIFFREP_ENUMERATION_CAP=10)
    def test_cap(self):
        with self.assertRaises(CapExceeded):
            higher_rep(seeded_set(31, 10, 1), 3)


class MuKTests(SimpleTestCase):

    def test_short_interval(self):
        self.assertEqual(mu_k(window_set([0, 1, 2]), 3), 1)

    def test_matches_mu_for_pairs(self):
        A = seeded_set(19, 7, 2)
        self.assertEqual(mu_k(A, 2), mu(A))

    def test_interval_of_five(self):
        A = interval(GroupSpec.cyclic(101), 1, 5)
        value, witness = mu_k_witness(A, 3)
        self.assertEqual(value, 3)
        self.assertEqual(len(set(witness)), 2)
        self.assertNotIn(0, witness)

    def test_no_admissible_tuple(self):
        self.assertEqual(mu_k_witness(window_set([0, 1]), 3), (0, None))
