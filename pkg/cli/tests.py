import json
import os
import tempfile
from fractions import Fraction
from io import StringIO
from unittest import mock

from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from extremal_verify.models import VerificationRun
from extremal_verify.reports import VIOLATED, CheckReport, make_instance

from .services import (EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, format_report, parse_int_list,
                       parse_rational, run)


def violated_report():
    return CheckReport(
        name='tightness',
        hypotheses_met=True,
        lhs=3,
        rhs=2,
        verdict=VIOLATED,
        instance=make_instance('tightness', n=10, p=41),
    )


class CliTestMixin:

    def setUp(self):
        super().setUp()
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def write_json(self, name, data):
        path = self.path(name)
        with open(path, 'w', encoding='utf-8') as fh:
            json.dump(data, fh)
        return path

    def write_set(self, name, elements, order=7):
        return self.write_json(name, {'group': {'kind': 'cyclic', 'order': order}, 'elements': elements})

    def call(self, *argv):
        out, err = StringIO(), StringIO()
        code = run(list(argv), stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()


class ParseTests(SimpleTestCase):

    def test_rationals_are_exact(self):
        self.assertEqual(parse_rational('1/4'), Fraction(1, 4))
        self.assertEqual(parse_rational('0.1'), Fraction(1, 10))
        self.assertEqual(parse_rational(' 3 '), 3)

    def test_rejects_exponent_and_garbage(self):
        for text in ('1e-3', 'abc', '1/0'):
            with self.assertRaises(CommandError):
                parse_rational(text)

    def test_int_list(self):
        self.assertEqual(parse_int_list('5,7, 11'), [5, 7, 11])
        with self.assertRaises(CommandError):
            parse_int_list('5,x')

    def test_report_formats(self):
        report = violated_report()
        self.assertEqual(json.loads(format_report(report, 'json'))['verdict'], VIOLATED)
        self.assertTrue(format_report(report, 'csv').startswith('field,value\n'))
        self.assertTrue(format_report(report, 'text').startswith('tightness: 3 <= 2 -> violated'))


class RunTests(CliTestMixin, SimpleTestCase):

    def test_unknown_command(self):
        code, _, err = self.call('frobnicate')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('unknown command', err)

    def test_no_arguments(self):
        self.assertEqual(self.call()[0], EXIT_USAGE)

    def test_unknown_target(self):
        self.assertEqual(self.call('compute', 'nothing')[0], EXIT_USAGE)

    def test_missing_file(self):
        code, _, err = self.call('compute', 'mu', '--set', self.path('absent.json'))
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('cannot read input', err)

    def test_bad_set_file(self):
        path = self.write_json('bad.json', {'group': {'kind': 'cyclic'}, 'elements': [0]})
        self.assertEqual(self.call('compute', 'mu', '--set', path)[0], EXIT_USAGE)

    def test_tcount(self):
        path = self.write_set('d.json', [-1, 0, 1])
        code, out, _ = self.call('compute', 'tcount', '--set', path, '--against', path, '--k', '3',
                                 '--naive', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['value'], 15)
        self.assertEqual(data['naive'], 15)

    def test_energy_sides_agree(self):
        path = self.write_set('a.json', [0, 1])
        code, out, _ = self.call('compute', 'energy', '--set', path, '--k', '3', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['viaRk'], 10)
        self.assertTrue(data['agree'])

    def test_reptable_csv(self):
        path = self.write_set('a.json', [0, 1])
        code, out, _ = self.call('compute', 'reptable', '--set', path, '--format', 'csv')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('0,2', out.splitlines())

    def test_mu_witness(self):
        path = self.write_set('a.json', [0, 1, 2], order=101)
        code, out, _ = self.call('compute', 'mu', '--set', path, '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['mu'], 2)
        self.assertIn(data['witness'], (1, 100))

    def test_measure0(self):
        code, out, _ = self.call('construct', 'measure0', '--epsilon', '1/4', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['difference_size'], 143)
        self.assertEqual(data['threshold_count'], 9)

    def test_constructed_set_feeds_compute(self):
        code, out, _ = self.call('construct', 'sidon', '--size', '6', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['elements'], [0, 1, 3, 7, 12, 20])
        path = self.path('sidon.json')
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(out)
        code, out, _ = self.call('compute', 'mu', '--set', path, '--format', 'json')
        self.assertEqual(json.loads(out)['mu'], 1)

    def test_interval_needs_one_group(self):
        self.assertEqual(self.call('construct', 'interval', '--a', '1', '--b', '3')[0], EXIT_USAGE)
        code, out, _ = self.call('construct', 'interval', '--order', '7', '--a', '1', '--b', '3',
                                 '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['elements'], [1, 2, 3])

    def test_random_is_seeded(self):
        argv = ('construct', 'random', '--order', '31', '--size', '8', '--seed', '4', '--format', 'json')
        self.assertEqual(self.call(*argv)[1], self.call(*argv)[1])

    def test_intopt_sweep(self):
        code, out, _ = self.call('verify', 'intopt', '--p', '5', '--kmax', '3', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['verdict'], 'holds')
        self.assertEqual(data['details']['checks'], 372)

    def test_single_intopt(self):
        a = self.write_set('a.json', [0, 2, 5])
        d = self.write_set('d.json', [-1, 0, 1])
        code, out, _ = self.call('verify', 'intopt', '--set', a, '--against', d, '--k', '3')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('intopt', out)

    def test_single_check_needs_its_flags(self):
        a = self.write_set('a.json', [0, 2, 5])
        code, _, err = self.call('verify', 'intopt', '--set', a)
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('--against', err)

    def test_non_prime_is_usage_error(self):
        self.assertEqual(self.call('verify', 'intopt', '--p', '4')[0], EXIT_USAGE)

    def test_vacuous_modp_exits_zero(self):
        path = self.write_set('a.json', list(range(1, 11)), order=101)
        code, out, _ = self.call('verify', 'modp', '--set', path, '--delta', '3/10', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['verdict'], 'vacuous')

    def test_tightness(self):
        code, out, _ = self.call('verify', 'tightness', '--n', '10', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['lhs'], '171/200')

    def test_violated_exits_two_with_instance(self):
        with mock.patch('cli.management.commands.verify.tightness_check', return_value=violated_report()):
            code, out, err = self.call('verify', 'tightness', '--n', '10', '--format', 'json')
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertEqual(json.loads(out)['verdict'], VIOLATED)
        self.assertEqual(json.loads(err), {'check': 'tightness', 'params': {'n': 10, 'p': 41}})

    def test_dump_then_replay(self):
        dump = self.path('instance.json')
        with mock.patch('cli.management.commands.verify.tightness_check', return_value=violated_report()):
            code, _, err = self.call('verify', 'tightness', '--n', '10', '--dump', dump)
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertEqual(err, '')
        code, out, _ = self.call('verify', 'replay', '--instance', dump, '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['verdict'], 'holds')

    def test_replay_unknown_check(self):
        path = self.write_json('instance.json', {'check': 'nothing', 'params': {}})
        self.assertEqual(self.call('verify', 'replay', '--instance', path)[0], EXIT_USAGE)

    def test_continuous(self):
        path = self.write_json('f.json', {'cells': 2, 'values': [1, 0]})
        code, out, _ = self.call('continuous', 'autocorr', '--function', path, '--format', 'csv')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, 'x,value\n-1,0\n-1/2,0\n0,1/2\n1/2,0\n1,0\n')

        code, out, _ = self.call('continuous', 't', '--k', '3', '--samples', '1000', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['exact'], 4)
        self.assertEqual(data['slicing'], 4)

    def test_rational_flags_reject_exponents(self):
        path = self.write_json('f.json', {'cells': 2, 'values': [1, 0]})
        code = self.call('continuous', 'omega', '--function', path, '--delta', '1e-3')[0]
        self.assertEqual(code, EXIT_USAGE)


class RecordTests(CliTestMixin, TestCase):

    def test_record_stores_run(self):
        code, _, err = self.call('verify', 'tightness', '--n', '10', '--record')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('recorded run', err)
        stored = VerificationRun.objects.get()
        self.assertEqual(stored.name, 'tightness')
        self.assertEqual(stored.lhs, '171/200')
