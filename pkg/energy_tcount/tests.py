import time
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, override_settings

from group_core.exceptions import (CapExceeded, Degenerate, GroupMismatch, HypothesisViolated,
                                   NotSymmetric)
from group_core.services import GroupSpec, GSet, interval
from repfn.services import mu

from .services import (VIA_RK, VIA_RL, TupleCounter, additive_energy, corollary_bound,
                       dense_bound, dense_tau, energy_kl, t_count, t_count_naive,
                       t_interval_closed_form, verify_id_ax)


def cyclic_set(n, elements):
    return GSet.from_elements(GroupSpec.cyclic(n), elements)


def seeded_set(n, size, seed):
    rng = np.random.default_rng(seed)
    return cyclic_set(n, rng.choice(n, size=size, replace=False).tolist())


def smallest_prime_above(n):
    candidate = n + 1
    while any(candidate % q == 0 for q in range(2, int(candidate ** 0.5) + 1)):
        candidate += 1
    return candidate


class EnergyTests(SimpleTestCase):

    def setUp(self):
        self.pair = GSet.from_elements(GroupSpec.integer_window(4), [0, 1])

    def test_ordinary_energy(self):
        self.assertEqual(energy_kl(self.pair, 2, 2).value, 6)
        self.assertEqual(additive_energy(self.pair), 6)

    def test_both_sides_of_three_two(self):
        self.assertEqual(energy_kl(self.pair, 3, 2, VIA_RK).value, 10)
        self.assertEqual(energy_kl(self.pair, 3, 2, VIA_RL).value, 10)

    def test_commutation_on_random_sets(self):
        for seed in range(6):
            A = seeded_set(31, 4 + seed, seed)
            for k in (2, 3, 4):
                for l in (2, 3, 4):
                    self.assertEqual(
                        energy_kl(A, k, l, VIA_RK).value,
                        energy_kl(A, k, l, VIA_RL).value,
                    )
                    self.assertEqual(energy_kl(A, k, l).value, energy_kl(A, l, k).value)

    def test_energy_against_mu(self):
        for seed in range(8):
            A = seeded_set(31, 3 + seed, seed)
            for k in (2, 3, 4):
                self.assertLessEqual(
                    additive_energy(A, k), len(A) ** k + mu(A) ** (k - 1) * len(A) ** 2
                )

    def test_arity_below_two(self):
        with self.assertRaises(Degenerate):
            energy_kl(self.pair, 1, 2)


class TupleCountTests(SimpleTestCase):

    def setUp(self):
        self.D1 = cyclic_set(7, [-1, 0, 1])
        self.D2 = cyclic_set(7, [-2, -1, 0, 1, 2])

    def test_pairs(self):
        self.assertEqual(t_count(self.D1, self.D1, 2).value, 7)
        self.assertEqual(t_count(self.D2, self.D2, 2).value, 19)

    def test_triples(self):
        self.assertEqual(t_count(self.D1, self.D1, 3).value, 15)

    def test_single_coordinate_is_size(self):
        D = cyclic_set(13, [0, 1, 12])
        A = seeded_set(13, 6, 1)
        self.assertEqual(t_count(D, A, 1).value, 6)

    def test_zero_outside_d(self):
        D = cyclic_set(7, [1, 6])
        self.assertEqual(t_count(D, D, 2).value, 0)
        self.assertEqual(t_count_naive(D, D, 2), 0)

    def test_group_mismatch(self):
        with self.assertRaises(GroupMismatch):
            t_count(self.D1, cyclic_set(5, [0]), 2)

    def test_shared_counter(self):
        counter = TupleCounter(self.D2)
        values = [t_count(self.D2, self.D2, k, counter).value for k in (1, 2, 3)]
        self.assertEqual(values, [5, 19, t_count_naive(self.D2, self.D2, 3)])

    def test_recursion_matches_naive_cyclic(self):
        for seed in range(12):
            p = (5, 7, 11, 13)[seed % 4]
            A = seeded_set(p, 1 + seed % p, seed)
            D = seeded_set(p, 1 + (seed * 3) % p, seed + 100)
            for k in (1, 2, 3):
                self.assertEqual(t_count(D, A, k).value, t_count_naive(D, A, k))

    def test_recursion_matches_naive_window(self):
        g = GroupSpec.integer_window(12)
        A = GSet.from_elements(g, [-5, -2, 0, 1, 4, 6])
        D = GSet.from_elements(g, [-3, -1, 0, 1, 2, 3, 5])
        for k in (1, 2, 3, 4):
            self.assertEqual(t_count(D, A, k).value, t_count_naive(D, A, k))

    def test_recursion_matches_naive_product(self):
        g = GroupSpec.product(2, 4)
        A = GSet.from_elements(g, [(0, 0), (0, 1), (1, 1), (1, 3), (0, 2)])
        D = GSet.from_elements(g, [(0, 0), (0, 1), (0, 3), (1, 0), (1, 1)])
        for k in (1, 2, 3):
            self.assertEqual(t_count(D, A, k).value, t_count_naive(D, A, k))

    def test_sets_wrapping_past_zero(self):
        D = cyclic_set(13, [-2, -1, 0, 1, 2, 6, 7])
        for A in (cyclic_set(13, [11, 12, 0, 1, 5]), cyclic_set(13, [12, 0, 3, 4, 9]), D):
            for k in (1, 2, 3, 4):
                self.assertEqual(t_count(D, A, k).value, t_count_naive(D, A, k))

    def test_translated_intervals_share_memo(self):
        m = 50
        g = GroupSpec.cyclic(smallest_prime_above(3 * (2 * m + 1)))
        D = interval(g, -m, m)
        counter = TupleCounter(D)
        self.assertEqual(counter.count(D, 4), t_interval_closed_form(m, 4))
        entries = len(counter.memo)
        self.assertLessEqual(entries, 3 * m + 3)
        for shift in (17, 150, g.order - 1):
            self.assertEqual(counter.count(interval(g, shift - m, shift + m), 4), t_interval_closed_form(m, 4))
        self.assertEqual(len(counter.memo), entries)

    def test_large_interval_within_time_budget(self):
        m = 1000
        D = interval(GroupSpec.cyclic(smallest_prime_above(3 * (2 * m + 1))), -m, m)
        started = time.monotonic()
        value = t_count(D, D, 4).value
        elapsed = time.monotonic() - started
        self.assertEqual(value, t_interval_closed_form(m, 4))
        self.assertLess(elapsed, 10.0)

    @override_settings(DIFFREP_ENUMERATION_CAP=100)
    def test_naive_cap(self):
        with self.assertRaises(CapExceeded):
            t_count_naive(self.D2, self.D2, 3)


class ClosedFormTests(SimpleTestCase):

    def test_values(self):
        self.assertEqual(t_interval_closed_form(1, 2), 7)
        self.assertEqual(t_interval_closed_form(2, 3), 65)
        self.assertEqual(t_interval_closed_form(0, 5), 1)

    def test_intervals_match_closed_form(self):
        for m in range(0, 5):
            g = GroupSpec.cyclic(smallest_prime_above(3 * (2 * m + 1)))
            D = interval(g, -m, m)
            counter = TupleCounter(D)
            for k in range(1, 5):
                self.assertEqual(counter.count(D, k), t_interval_closed_form(m, k))


class BoundTests(SimpleTestCase):

    def test_corollary_bound(self):
        self.assertEqual(corollary_bound(3, 3), Fraction(243, 16))
        self.assertEqual(corollary_bound(5, 3), Fraction(1125, 16))
        D = cyclic_set(7, [-1, 0, 1])
        self.assertLessEqual(t_count(D, D, 3).value, corollary_bound(3, 3))

    def test_corollary_hypotheses(self):
        with self.assertRaises(HypothesisViolated):
            corollary_bound(5, 2)
        with self.assertRaises(HypothesisViolated):
            corollary_bound(3, 4)

    def test_dense_bound_worked_instance(self):
        D = cyclic_set(9, [x for x in range(9) if x not in (4, 5)])
        tau = dense_tau(D)
        self.assertEqual(tau, Fraction(2, 7))
        self.assertEqual(dense_bound(len(D), tau, 2), 42)
        self.assertEqual(t_count(D, D, 2).value, 39)

    def test_dense_bound_single_coordinate(self):
        self.assertEqual(dense_bound(7, Fraction(2, 7), 1), 7)

    def test_dense_bound_hypotheses(self):
        with self.assertRaises(HypothesisViolated):
            dense_bound(7, Fraction(3, 5), 1)
        with self.assertRaises(HypothesisViolated):
            dense_bound(7, Fraction(1, 3), 3)
        with self.assertRaises(HypothesisViolated):
            dense_bound(7, Fraction(0), 2)


class IdentityTests(SimpleTestCase):

    def test_symmetric_interval(self):
        D = cyclic_set(7, [-1, 0, 1])
        report = verify_id_ax(D, D, 1)
        self.assertEqual(report.verdict, 'holds')
        self.assertEqual(report.details, {'direct': 7, 'ax1': 7, 'ax2': 7, 'k': 1})

    def test_short_interval(self):
        report = verify_id_ax(cyclic_set(7, [0, 1, 2]), cyclic_set(7, [-1, 0, 1]), 2)
        self.assertEqual(report.verdict, 'holds')
        self.assertEqual(report.lhs, t_count_naive(cyclic_set(7, [-1, 0, 1]), cyclic_set(7, [0, 1, 2]), 3))

    def test_singleton(self):
        report = verify_id_ax(cyclic_set(11, [4]), cyclic_set(11, [0, 3, 8]), 3)
        self.assertEqual(report.details['direct'], 1)
        self.assertEqual(report.verdict, 'holds')

    def test_random_instances(self):
        for seed in range(10):
            p = (7, 11, 13)[seed % 3]
            A = seeded_set(p, 2 + seed % 5, seed)
            half = seeded_set(p, 1 + seed % 4, seed + 50)
            D = GSet(half.group, half.bits | half.negate().bits | 1)
            report = verify_id_ax(A, D, 1 + seed % 3)
            self.assertEqual(report.verdict, 'holds', report.details)

    def test_needs_symmetric_d(self):
        with self.assertRaises(NotSymmetric):
            verify_id_ax(cyclic_set(7, [0, 1]), cyclic_set(7, [0, 1]), 1)
