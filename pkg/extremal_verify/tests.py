import json
from fractions import Fraction

from django.test import SimpleTestCase, TestCase

from group_core.exceptions import CapExceeded, DiffrepError, HypothesisViolated, NotSymmetric
from group_core.services import GroupSpec, GSet, interval
from continuous.services import theorem_fan_check

from .models import VerificationRun
from .replay import decode_param, replay
from .reports import (BORDERLINE, HOLDS, HYPOTHESES_UNMET, VACUOUS, VIOLATED, CheckReport,
                      exact_verdict, guarded_verdict, make_instance, to_json_value)
from .serializers import CheckReportSerializer
from .services import (check_basic_chain, convexity_check, corollary_check, dense_bound_check,
                       interval_closed_form_check, majorization_check, theorem_arbG_check,
                       theorem_extD_check, theorem_intverD_check, theorem_intverL_check,
                       theorem_modp_check, tightness_check, verify_intopt)
from . import sweeps


def cyclic_set(n, elements):
    return GSet.from_elements(GroupSpec.cyclic(n), elements)


def window_set(halfwidth, elements):
    return GSet.from_elements(GroupSpec.integer_window(halfwidth), elements)


class VerdictTests(SimpleTestCase):

    def test_exact(self):
        self.assertEqual(exact_verdict(2, 4, '<='), HOLDS)
        self.assertEqual(exact_verdict(Fraction(1, 3), Fraction(1, 3), '<'), VIOLATED)

    def test_guard_band(self):
        self.assertEqual(guarded_verdict(1, 1 + 1e-12, '>='), BORDERLINE)
        self.assertEqual(guarded_verdict(1, 0.5, '>'), HOLDS)
        self.assertEqual(guarded_verdict(1, 2, '>'), VIOLATED)

    def test_long_rationals_render_in_scientific_form(self):
        value = Fraction(3 ** 9000, 2)
        self.assertTrue(to_json_value(value).endswith('e+4293'))
        self.assertEqual(to_json_value(Fraction(3, 2)), '3/2')
        report = CheckReport(name='omega-k', hypotheses_met=True, lhs=value, rhs=1, relation='>=')
        self.assertIn('e+4293 >= 1', report.summary())
        self.assertTrue(json.loads(json.dumps(report.to_dict()))['lhs'].endswith('e+4293'))


class RearrangementTests(SimpleTestCase):

    def setUp(self):
        self.A = cyclic_set(5, [0, 2])
        self.D = cyclic_set(5, [0, 1, 4])

    def test_intopt_example(self):
        report = verify_intopt(self.A, self.D, 2)
        self.assertEqual((report.lhs, report.rhs, report.verdict), (2, 4, HOLDS))

    def test_intopt_single_coordinate(self):
        report = verify_intopt(self.A, self.D, 1)
        self.assertEqual(report.lhs, 2)
        self.assertEqual(report.rhs, 2)

    def test_intopt_fixed_point(self):
        A = interval(GroupSpec.cyclic(7), -1, 1)
        report = verify_intopt(A, A, 3)
        self.assertEqual(report.lhs, report.rhs)

    def test_intopt_hypotheses(self):
        with self.assertRaises(HypothesisViolated):
            verify_intopt(cyclic_set(9, [0]), cyclic_set(9, [0]), 1)
        with self.assertRaises(NotSymmetric):
            verify_intopt(self.A, cyclic_set(5, [0, 1]), 1)

    def test_majorization_example(self):
        report = majorization_check(self.A, self.D)
        self.assertEqual(report.details['sequence'], [1, 1])
        self.assertEqual(report.details['rearranged_sequence'], [2, 2])
        self.assertEqual(report.verdict, HOLDS)

    def test_convexity_examples(self):
        report = convexity_check(7, 2, (1,))
        self.assertEqual(report.details['sequence'], [0, 1, 2, 3, 4, 5])
        self.assertEqual(report.verdict, HOLDS)
        self.assertEqual(convexity_check(5, 2, (0,)).details['sequence'], [1, 2, 3, 4])
        self.assertEqual(convexity_check(7, 3, (1, 2)).verdict, HOLDS)


class ChainTests(SimpleTestCase):

    def test_worked_instance(self):
        report = check_basic_chain(cyclic_set(7, [0, 1, 2]), 2)
        self.assertEqual(report.lhs, 729)
        self.assertEqual(report.details['middle'], 855)
        self.assertEqual(report.details['support'], 19)
        self.assertEqual(report.details['energy'], 45)
        self.assertEqual(report.rhs, 1197)
        self.assertEqual(report.verdict, HOLDS)

    def test_pair(self):
        self.assertEqual(check_basic_chain(cyclic_set(7, [0, 1]), 2).verdict, HOLDS)


class BoundCheckTests(SimpleTestCase):

    def test_closed_form(self):
        report = interval_closed_form_check(2, 3)
        self.assertEqual(report.lhs, 65)
        self.assertEqual(report.verdict, HOLDS)

    def test_corollary(self):
        report = corollary_check(cyclic_set(7, [-1, 0, 1]), 3)
        self.assertEqual(report.lhs, 15)
        self.assertEqual(report.rhs, Fraction(243, 16))
        self.assertEqual(report.verdict, HOLDS)

    def test_corollary_size_gate(self):
        report = corollary_check(cyclic_set(7, [-3, -2, -1, 0, 1, 2, 3]), 3)
        self.assertEqual(report.verdict, HYPOTHESES_UNMET)

    def test_dense_worked_instance(self):
        D = cyclic_set(9, [x for x in range(9) if x not in (4, 5)])
        report = dense_bound_check(D, 2)
        self.assertEqual((report.lhs, report.rhs, report.verdict), (39, 42, HOLDS))

    def test_tightness(self):
        report = tightness_check(10)
        self.assertEqual(report.lhs, Fraction(171, 200))
        self.assertEqual(report.details['p'], 41)
        self.assertEqual(report.verdict, HOLDS)


class TheoremTests(SimpleTestCase):

    def test_modp_vacuous_interval(self):
        report = theorem_modp_check(interval(GroupSpec.cyclic(101), 1, 10), Fraction(3, 10))
        self.assertTrue(report.hypotheses_met)
        self.assertEqual(report.details['K'], Fraction(19, 10))
        self.assertEqual(report.lhs, 9)
        self.assertEqual(report.verdict, VACUOUS)

    def test_modp_doubling_gate(self):
        report = theorem_modp_check(cyclic_set(101, [0, 1, 3]), Fraction(1, 5))
        self.assertFalse(report.hypotheses_met)
        self.assertEqual(report.verdict, HYPOTHESES_UNMET)

    def test_modp_delta_range(self):
        with self.assertRaises(HypothesisViolated):
            theorem_modp_check(cyclic_set(101, [0, 1]), Fraction(1, 3))

    def test_extd_reports_mu_k(self):
        report = theorem_extD_check(interval(GroupSpec.cyclic(101), 1, 5), 3, Fraction(1, 12))
        self.assertEqual(report.verdict, HYPOTHESES_UNMET)
        self.assertEqual(report.details['mu_k'], 3)

    def test_extd_hypotheses_met_on_long_interval(self):
        report = theorem_extD_check(interval(GroupSpec.cyclic(1801), 1, 600), 3, Fraction(10, 91))
        self.assertTrue(report.hypotheses_met)
        self.assertEqual(report.details['difference_size'], 1199)
        self.assertEqual(report.lhs, 598)
        self.assertIn(report.verdict, (HOLDS, VACUOUS))

    def test_extd_preconditions(self):
        A = interval(GroupSpec.cyclic(101), 1, 5)
        with self.assertRaises(HypothesisViolated):
            theorem_extD_check(A, 3, Fraction(1, 9))
        with self.assertRaises(HypothesisViolated):
            theorem_extD_check(A, 2, Fraction(1, 12))

    def test_arbg_size_gate(self):
        report = theorem_arbG_check(interval(GroupSpec.cyclic(4096), 0, 499))
        self.assertEqual(report.verdict, HYPOTHESES_UNMET)

    def test_arbg_full_difference_set(self):
        report = theorem_arbG_check(interval(GroupSpec.cyclic(2048), 0, 1099))
        self.assertEqual(report.details['epsilon'], 0)
        self.assertFalse(report.hypotheses_met)

    def test_intverd_vacuous_interval(self):
        report = theorem_intverD_check(window_set(40, range(1, 11)), Fraction(3, 10))
        self.assertEqual(report.verdict, VACUOUS)

    def test_intverl(self):
        report = theorem_intverL_check(window_set(40, range(1, 11)), 10, Fraction(3, 10))
        self.assertTrue(report.hypotheses_met)
        self.assertEqual(report.lhs, 9)
        with self.assertRaises(HypothesisViolated):
            theorem_intverL_check(window_set(40, [0, 3]), 10, Fraction(1, 4))


class SweepTests(SimpleTestCase):

    def test_exhaustive_intopt_small(self):
        report = sweeps.exhaustive_intopt(5, 3)
        self.assertEqual(report.verdict, HOLDS)
        self.assertEqual(report.details['checks'], 4 * 31 * 3)
        self.assertEqual(report.instance, make_instance('intopt-sweep', p=5, k_max=3))

    def test_exhaustive_intopt_seven(self):
        self.assertEqual(sweeps.exhaustive_intopt(7, 3).verdict, HOLDS)

    def test_exhaustive_intopt_gates(self):
        with self.assertRaises(HypothesisViolated):
            sweeps.exhaustive_intopt(4, 3)
        with self.assertRaises(CapExceeded):
            sweeps.exhaustive_intopt(17, 3)

    def test_worker_count_does_not_change_report(self):
        serial = sweeps.exhaustive_majorization(5, jobs=1)
        pooled = sweeps.exhaustive_majorization(5, jobs=2)
        self.assertEqual(serial.to_dict(), pooled.to_dict())

    def test_majorization_sweeps(self):
        self.assertEqual(sweeps.exhaustive_majorization(5).details['checks'], 4 * 31)
        self.assertEqual(sweeps.exhaustive_majorization(7).verdict, HOLDS)

    def test_convexity_sweep(self):
        report = sweeps.exhaustive_convexity(7, 4)
        self.assertEqual(report.details['checks'], 7 + 7 ** 2 + 7 ** 3)
        self.assertEqual(report.verdict, HOLDS)

    def test_bound_sweeps(self):
        self.assertEqual(sweeps.corollary_sweep(primes=(5, 7), ks=(3, 4)).verdict, HOLDS)
        dense = sweeps.dense_bound_sweep(k_max=4)
        self.assertEqual(dense.verdict, HOLDS)
        self.assertGreater(dense.details['checks'], 0)
        self.assertEqual(sweeps.closed_form_sweep(m_max=3, k_max=3).details['checks'], 12)

    def test_modp_sweep(self):
        report = sweeps.modp_sweep(primes=(5, 7, 11))
        self.assertEqual(report.verdict, HOLDS)
        self.assertEqual(report.details['checks'], 3 * (2 ** 4 + 2 ** 6 + 2 ** 10))

    def test_sampled_sweeps(self):
        self.assertEqual(sweeps.chain_sweep(count=20).verdict, HOLDS)
        self.assertEqual(sweeps.id_ax_sweep(count=10).verdict, HOLDS)
        self.assertEqual(sweeps.energy_commutation_sweep(count=3).verdict, HOLDS)
        self.assertEqual(sweeps.tightness_sweep(10, 30).details['checks'], 21)
        self.assertEqual(sweeps.fan_sweep(count=4).verdict, HOLDS)
        extd = sweeps.extd_sweep(primes=(61,), sizes=range(2, 8), samples=2)
        self.assertEqual(extd.verdict, HOLDS)

    def test_extd_sweep_passes_hypothesis_gate(self):
        report = sweeps.extd_sweep(ks=(3,), primes=(61,), sizes=range(2, 6), samples=1)
        self.assertEqual(report.verdict, HOLDS)
        counts = report.details['by_check']['extd']
        self.assertGreaterEqual(counts.get(HOLDS, 0) + counts.get(VACUOUS, 0), 1)
        self.assertEqual(len(report.details['met_intervals']), 1)

    def test_fan_sweep_at_full_size(self):
        report = sweeps.fan_sweep(count=1000)
        self.assertEqual(report.verdict, HOLDS)
        self.assertGreater(report.details['by_check']['fan'].get(HOLDS, 0), 0)
        self.assertGreater(report.details['by_check']['omega-k'].get(HOLDS, 0), 0)

    def test_low_spread_fan_instance_is_decided(self):
        f = sweeps.fan_instance(0, 1)
        self.assertTrue(all(v >= sweeps.FAN_LOW_SPREAD_MIN for v in f.values))
        delta = sweeps.FAN_DELTAS[-1]
        self.assertIn(delta, sweeps.admissible_deltas(f))
        report = theorem_fan_check(f, delta)
        self.assertGreater(report.rhs, 0)
        self.assertEqual(report.verdict, HOLDS)

    def test_aggregate_keeps_first_violation(self):
        first = {'check': 'chain', 'params': {'k': 1}}
        results = [
            {'checks': 3, 'verdicts': {HOLDS: 3}, 'violation': None},
            {'checks': 2, 'verdicts': {VIOLATED: 2}, 'violation': {'instance': first}},
            {'checks': 1, 'verdicts': {VIOLATED: 1}, 'violation': {'instance': {'check': 'other'}}},
        ]
        report = sweeps.aggregate('chain-sweep', results, {'count': 6, 'seed': 0})
        self.assertEqual(report.verdict, VIOLATED)
        self.assertEqual(report.lhs, 3)
        self.assertEqual(report.instance, first)
        self.assertEqual(report.details['checks'], 6)


class ReplayTests(SimpleTestCase):

    def test_single_check_round_trip(self):
        report = check_basic_chain(cyclic_set(7, [0, 1, 2]), 2)
        self.assertEqual(replay(report.instance).to_dict(), report.to_dict())

    def test_rational_params(self):
        report = theorem_modp_check(interval(GroupSpec.cyclic(101), 1, 10), Fraction(3, 10))
        self.assertEqual(report.instance['params']['delta'], '3/10')
        self.assertEqual(replay(report.instance).to_dict(), report.to_dict())

    def test_sweep_round_trip(self):
        report = sweeps.exhaustive_majorization(5)
        self.assertEqual(replay(report.instance).to_dict(), report.to_dict())

    def test_decode(self):
        self.assertEqual(decode_param('1/4'), Fraction(1, 4))
        self.assertEqual(decode_param('abc'), 'abc')
        self.assertEqual(decode_param({'group': {'kind': 'cyclic', 'order': 5}, 'elements': [1]}),
                         cyclic_set(5, [1]))

    def test_unknown_check(self):
        with self.assertRaises(DiffrepError):
            replay({'check': 'nope', 'params': {}})


class CheckReportSerializerTests(SimpleTestCase):

    def test_rationals_as_strings(self):
        data = CheckReportSerializer(tightness_check(10)).data
        self.assertEqual(data['lhs'], '171/200')
        self.assertEqual(data['verdict'], HOLDS)
        self.assertEqual(data['instance'], {'check': 'tightness', 'params': {'n': 10, 'p': 41}})


class VerificationRunTests(TestCase):

    def test_record(self):
        report = tightness_check(10)
        run = VerificationRun.objects.record(report)
        self.assertEqual(run.name, 'tightness')
        self.assertEqual(run.verdict, HOLDS)
        self.assertEqual(run.lhs, '171/200')
        self.assertEqual(run.instance, report.instance)
        self.assertEqual(VerificationRun.objects.violations().count(), 0)

    def test_stored_report_replays(self):
        report = check_basic_chain(cyclic_set(7, [0, 1, 2]), 2)
        run = VerificationRun.objects.record(report)
        stored = VerificationRun.objects.get(pk=run.pk)
        self.assertEqual(replay(stored.instance).to_dict(), stored.report)

    def test_rational_bounds_stored_as_text(self):
        run = VerificationRun.objects.record(tightness_check(12))
        stored = VerificationRun.objects.get(pk=run.pk)
        self.assertEqual(stored.rhs, '253/288')
