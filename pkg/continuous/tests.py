import json
from fractions import Fraction

from django.test import SimpleTestCase
from rest_framework.exceptions import ValidationError

from group_core.exceptions import DiffrepError, HypothesisViolated, ZeroFunction
from extremal_verify.reports import HOLDS, VACUOUS

from .serializers import StepFunctionSerializer, parse_step_function, piecewise_linear_csv
from .services import (EXACT_POWER_LIMIT, StepFunction, autocorrelate, autocorrelation_checks, continuous_t,
                       continuous_t_monte_carlo, continuous_t_slicing, delta_limit, norms, omega,
                       omega_k_report, random_step_function, theorem_fan_check)


class StepFunctionTests(SimpleTestCase):

    def setUp(self):
        self.half = StepFunction((2, 0))  # 2 on [0, 1/2]

    def test_norms(self):
        measures = norms(StepFunction((1, 3)))
        self.assertEqual(measures.l1, 2)
        self.assertEqual(measures.l2sq, 5)
        self.assertEqual(measures.rho_squared, Fraction(5, 4))
        self.assertEqual(norms(StepFunction.constant()).rho_squared, 1)

    def test_validation(self):
        with self.assertRaises(ZeroFunction):
            StepFunction((0, 0))
        with self.assertRaises(DiffrepError):
            StepFunction((1, -1))

    def test_triangle(self):
        g = autocorrelate(StepFunction.constant())
        self.assertEqual(g.at(Fraction(1, 2)), Fraction(1, 2))
        wide = autocorrelate(StepFunction.constant(256))
        for j in range(-256, 257):
            self.assertEqual(wide.at_breakpoint(j), 1 - Fraction(abs(j), 256))

    def test_half_interval(self):
        g = autocorrelate(self.half)
        self.assertEqual(g.at(Fraction(2, 5)), Fraction(2, 5))
        self.assertEqual(g.at(0), norms(self.half).l2sq)

    def test_autocorrelation_facts_on_random_functions(self):
        for seed in range(100):
            f = random_step_function(2 + seed % 15, seed, nonconstant=False)
            report = autocorrelation_checks(f)
            self.assertEqual(report.verdict, HOLDS, report.details)

    def test_low_spread_random_functions(self):
        for seed in range(20):
            f = random_step_function(2 + seed % 15, seed, min_value=4)
            self.assertTrue(all(4 <= v <= 8 for v in f.values))
            self.assertFalse(f.is_constant_on_support)
            self.assertLessEqual(norms(f).rho_squared, Fraction(9, 8))

    def test_rational_values(self):
        g = autocorrelate(StepFunction((Fraction(1, 2), Fraction(1, 3))))
        self.assertEqual(g.integral(), norms(StepFunction((Fraction(1, 2), Fraction(1, 3)))).l1 ** 2)


class OmegaTests(SimpleTestCase):

    def test_triangle(self):
        self.assertEqual(omega(StepFunction.constant(), Fraction(1, 10)), Fraction(9, 10))

    def test_half_interval(self):
        self.assertEqual(omega(StepFunction((2, 0)), Fraction(1, 10)), Fraction(8, 5))

    def test_far_delta(self):
        self.assertEqual(omega(StepFunction((1, 2)), 1), 0)
        with self.assertRaises(HypothesisViolated):
            omega(StepFunction((1, 2)), 0)


class TupleVolumeTests(SimpleTestCase):

    def test_formula_and_slicing(self):
        for k in range(1, 7):
            self.assertEqual(continuous_t(k), k + 1)
            self.assertEqual(continuous_t_slicing(k), k + 1)

    def test_monte_carlo(self):
        self.assertAlmostEqual(continuous_t_monte_carlo(3, samples=10 ** 6, seed=1), 4, delta=0.05)


class FanTests(SimpleTestCase):

    def setUp(self):
        self.half = StepFunction((2, 0))

    def test_vacuous_at_largest_delta(self):
        self.assertEqual(delta_limit(norms(self.half).rho_squared), Fraction(1, 256))
        report = theorem_fan_check(self.half, Fraction(1, 256))
        self.assertEqual(report.verdict, VACUOUS)
        self.assertLess(report.rhs, 0)

    def test_small_delta(self):
        delta = Fraction(1, 10 ** 6)
        report = theorem_fan_check(self.half, delta)
        self.assertEqual(report.omega, 2 - 4 * delta)
        self.assertAlmostEqual(report.rho, 2 ** 0.5)
        self.assertIn(report.verdict, (HOLDS, VACUOUS))
        self.assertIn('L1', report.to_dict())

    def test_omega_power(self):
        delta = Fraction(1, 10 ** 6)
        report = omega_k_report(self.half, delta, k=2)
        self.assertEqual(report.lhs, (2 - 4 * delta) ** 2)
        self.assertEqual(report.rhs, Fraction(1, 3) - 16 * delta)
        self.assertEqual(report.verdict, HOLDS)

    def test_inequality_decides_at_tiny_delta(self):
        delta = Fraction(1, 2 ** 40)
        for f in (self.half, StepFunction((5, 6))):
            report = theorem_fan_check(f, delta)
            self.assertGreater(report.rhs, 0)
            self.assertEqual(report.verdict, HOLDS)

    def test_nearly_constant_function_large_power(self):
        report = omega_k_report(StepFunction((5, 6)), Fraction(1, 2 ** 20))
        self.assertGreater(report.details['k'], EXACT_POWER_LIMIT)
        self.assertTrue(report.details['log_space'])
        self.assertEqual(report.verdict, HOLDS)
        self.assertIn('omega-k', report.summary())
        data = json.loads(json.dumps(report.to_dict()))
        self.assertEqual(data['verdict'], HOLDS)

    def test_default_power_stays_exact_for_spread_function(self):
        delta = Fraction(1, 2 ** 40)
        report = omega_k_report(self.half, delta)
        self.assertLessEqual(report.details['k'], EXACT_POWER_LIMIT)
        self.assertFalse(report.details['log_space'])
        self.assertEqual(report.lhs, (2 - 4 * delta) ** report.details['k'])

    def test_hypotheses(self):
        with self.assertRaises(HypothesisViolated):
            theorem_fan_check(StepFunction.constant(4), Fraction(1, 256))
        with self.assertRaises(HypothesisViolated):
            theorem_fan_check(self.half, Fraction(1, 100))


class SerializerTests(SimpleTestCase):

    def test_parse(self):
        f = parse_step_function({'cells': 2, 'values': [1, '3/2']})
        self.assertEqual(f.values, (1, Fraction(3, 2)))
        self.assertEqual(StepFunctionSerializer(f).data, {'cells': 2, 'values': [1, '3/2']})

    def test_rejects_floats_and_bad_lengths(self):
        with self.assertRaises(ValidationError):
            parse_step_function({'cells': 2, 'values': [1, 0.5]})
        with self.assertRaises(ValidationError):
            parse_step_function({'cells': 3, 'values': [1, 2]})
        with self.assertRaises(ValidationError):
            parse_step_function({'cells': 2, 'values': [0, 0]})

    def test_breakpoint_csv(self):
        csv_text = piecewise_linear_csv(autocorrelate(StepFunction.constant()))
        self.assertEqual(csv_text, 'x,value\n-1,0\n0,1\n1,0\n')
