from energy_tcount.services import verify_id_ax
from continuous.services import theorem_fan_check
from extremal_verify import sweeps
from extremal_verify.replay import load_instance, replay
from extremal_verify.services import (check_basic_chain, convexity_check, corollary_check,
                                      dense_bound_check, energy_commutation_check,
                                      interval_closed_form_check, majorization_check,
                                      theorem_arbG_check, theorem_extD_check,
                                      theorem_intverD_check, theorem_intverL_check,
                                      theorem_modp_check, tightness_check, verify_intopt)

from cli.base import DiffrepCommand
from cli.services import parse_int_list, parse_rational, parse_rational_list


class Command(DiffrepCommand):
    help = (
        'Run a checker on one instance (given set files) or a sweep (no set files); '
        'exit 2 on a violated verdict'
    )
    targets = {
        'intopt': 'T_D^(k)(A) <= T of the centered rearrangements',
        'id-ax': 'T_D^(k+1)(A) computed three ways',
        'convexity': 'convexity of n -> R^(k) of [1, n]',
        'majorization': 'slice sizes majorized by the rearranged ones',
        'chain': 'the Cauchy-Schwarz chain ending in T_D^(k)(D)',
        'modp': 'mu lower bound in C_p under small doubling',
        'intverd': 'mu lower bound in Z under small doubling',
        'intverl': 'mu lower bound for A in [1, L]',
        'extd': 'mu^(k) lower bound in C_p',
        'arbg': 'mu lower bound when A - A nearly fills G',
        'fan': 'omega lower bound for step functions',
        'corollary': 'T_D^(k)(D) <= 3k 2^(-k-1) |D|^k',
        'dense-bound': 'T_D^(k)(D) for dense D',
        'closed-form': 'T of [-m, m] against its closed form',
        'energy-commutation': 'E_{k,l} computed from both sides',
        'tightness': 'mu of intervals against twice the average',
        'replay': 're-run a dumped instance',
    }

    def _sweep_arguments(self, parser, seed=True, count=None):
        if count is not None:
            parser.add_argument('--count', type=int, default=count)
        if seed:
            parser.add_argument('--seed', type=int, default=0)

    # Rearrangement

    def arguments_intopt(self, parser):
        parser.add_argument('--set', help='A; omit for the exhaustive sweep')
        parser.add_argument('--against', help='symmetric D')
        parser.add_argument('--k', type=int)
        parser.add_argument('--p', type=int, help='prime for the exhaustive sweep')
        parser.add_argument('--kmax', type=int, default=3)

    def handle_intopt(self, **options):
        if options['set']:
            self.require(options, 'against', 'k')
            report = verify_intopt(self.load_set(options['set']), self.load_set(options['against']),
                                   options['k'])
        else:
            self.require(options, 'p')
            report = sweeps.exhaustive_intopt(options['p'], options['kmax'], options['jobs'])
        self.emit_report(report, options)

    def arguments_id_ax(self, parser):
        parser.add_argument('--set')
        parser.add_argument('--against')
        parser.add_argument('--k', type=int)
        self._sweep_arguments(parser, count=100)

    def handle_id_ax(self, **options):
        if options['set']:
            self.require(options, 'against', 'k')
            report = verify_id_ax(self.load_set(options['set']), self.load_set(options['against']),
                                  options['k'])
        else:
            report = sweeps.id_ax_sweep(options['count'], options['seed'], options['jobs'])
        self.emit_report(report, options)

    def arguments_convexity(self, parser):
        parser.add_argument('--p', type=int, required=True)
        parser.add_argument('--k', type=int)
        parser.add_argument('--ds', help='d_1,...,d_(k-1); omit for every tuple up to --kmax')
        parser.add_argument('--kmax', type=int, default=4)

    def handle_convexity(self, **options):
        if options['ds'] is not None:
            ds = parse_int_list(options['ds'])
            k = options['k'] or len(ds) + 1
            report = convexity_check(options['p'], k, ds)
        else:
            report = sweeps.exhaustive_convexity(options['p'], options['kmax'], options['jobs'])
        self.emit_report(report, options)

    def arguments_majorization(self, parser):
        parser.add_argument('--set')
        parser.add_argument('--against')
        parser.add_argument('--p', type=int)

    def handle_majorization(self, **options):
        if options['set']:
            self.require(options, 'against')
            report = majorization_check(self.load_set(options['set']),
                                        self.load_set(options['against']))
        else:
            self.require(options, 'p')
            report = sweeps.exhaustive_majorization(options['p'], options['jobs'])
        self.emit_report(report, options)

    # Chain and energies

    def arguments_chain(self, parser):
        parser.add_argument('--set')
        parser.add_argument('--k', type=int)
        self._sweep_arguments(parser, count=1000)

    def handle_chain(self, **options):
        if options['set']:
            self.require(options, 'k')
            report = check_basic_chain(self.load_set(options['set']), options['k'])
        else:
            report = sweeps.chain_sweep(options['count'], options['seed'], options['jobs'])
        self.emit_report(report, options)

    def arguments_energy_commutation(self, parser):
        parser.add_argument('--set')
        parser.add_argument('--k', type=int)
        parser.add_argument('--l', type=int)
        parser.add_argument('--p', type=int, default=31)
        self._sweep_arguments(parser, count=100)

    def handle_energy_commutation(self, **options):
        if options['set']:
            self.require(options, 'k', 'l')
            report = energy_commutation_check(self.load_set(options['set']), options['k'], options['l'])
        else:
            report = sweeps.energy_commutation_sweep(options['count'], options['p'], options['seed'],
                                                     options['jobs'])
        self.emit_report(report, options)

    # Theorems

    def arguments_modp(self, parser):
        parser.add_argument('--set')
        parser.add_argument('--delta', type=parse_rational)
        parser.add_argument('--primes', help='sweep primes, default every prime up to 19')
        parser.add_argument('--deltas', default='1/10,1/5,3/10')

    def handle_modp(self, **options):
        if options['set']:
            self.require(options, 'delta')
            report = theorem_modp_check(self.load_set(options['set']), options['delta'])
        else:
            primes = parse_int_list(options['primes']) if options['primes'] else None
            report = sweeps.modp_sweep(primes, parse_rational_list(options['deltas']), options['jobs'])
        self.emit_report(report, options)

    def arguments_intverd(self, parser):
        parser.add_argument('--set', required=True)
        parser.add_argument('--delta', type=parse_rational, required=True)

    def handle_intverd(self, **options):
        report = theorem_intverD_check(self.load_set(options['set']), options['delta'])
        self.emit_report(report, options)

    def arguments_intverl(self, parser):
        parser.add_argument('--set', required=True)
        parser.add_argument('--length', type=int, required=True)
        parser.add_argument('--delta', type=parse_rational, required=True)

    def handle_intverl(self, **options):
        report = theorem_intverL_check(self.load_set(options['set']), options['length'],
                                       options['delta'])
        self.emit_report(report, options)

    def arguments_extd(self, parser):
        parser.add_argument('--set')
        parser.add_argument('--k', type=int)
        parser.add_argument('--delta', type=parse_rational)
        parser.add_argument('--ks', default='3,4')
        parser.add_argument('--primes', default='61,101')
        parser.add_argument('--samples', type=int, default=20)
        self._sweep_arguments(parser)

    def handle_extd(self, **options):
        if options['set']:
            self.require(options, 'k', 'delta')
            report = theorem_extD_check(self.load_set(options['set']), options['k'], options['delta'])
        else:
            report = sweeps.extd_sweep(
                ks=parse_int_list(options['ks']),
                primes=parse_int_list(options['primes']),
                samples=options['samples'],
                seed=options['seed'],
                jobs=options['jobs'],
            )
        self.emit_report(report, options)

    def arguments_arbg(self, parser):
        parser.add_argument('--set', required=True)

    def handle_arbg(self, **options):
        self.emit_report(theorem_arbG_check(self.load_set(options['set'])), options)

    def arguments_fan(self, parser):
        parser.add_argument('--function', help='step-function file; omit for the random sweep')
        parser.add_argument('--delta', type=parse_rational)
        self._sweep_arguments(parser, count=1000)

    def handle_fan(self, **options):
        if options['function']:
            self.require(options, 'delta')
            report = theorem_fan_check(self.load_function(options['function']), options['delta'])
        else:
            report = sweeps.fan_sweep(options['count'], options['seed'], options['jobs'])
        self.emit_report(report, options)

    # Tuple-count bounds

    def arguments_corollary(self, parser):
        parser.add_argument('--set', help='symmetric D')
        parser.add_argument('--k', type=int)
        parser.add_argument('--primes', default='5,7,11,13')
        parser.add_argument('--ks', default='3,4,5')

    def handle_corollary(self, **options):
        if options['set']:
            self.require(options, 'k')
            report = corollary_check(self.load_set(options['set']), options['k'])
        else:
            report = sweeps.corollary_sweep(parse_int_list(options['primes']),
                                            parse_int_list(options['ks']), options['jobs'])
        self.emit_report(report, options)

    def arguments_dense_bound(self, parser):
        parser.add_argument('--set', help='symmetric D')
        parser.add_argument('--k', type=int)
        parser.add_argument('--kmax', type=int, default=4)

    def handle_dense_bound(self, **options):
        if options['set']:
            self.require(options, 'k')
            report = dense_bound_check(self.load_set(options['set']), options['k'])
        else:
            report = sweeps.dense_bound_sweep(options['kmax'], options['jobs'])
        self.emit_report(report, options)

    def arguments_closed_form(self, parser):
        parser.add_argument('--m', type=int)
        parser.add_argument('--k', type=int)
        parser.add_argument('--p', type=int)
        parser.add_argument('--mmax', type=int, default=8)
        parser.add_argument('--kmax', type=int, default=5)

    def handle_closed_form(self, **options):
        if options['m'] is not None:
            self.require(options, 'k')
            report = interval_closed_form_check(options['m'], options['k'], options['p'])
        else:
            report = sweeps.closed_form_sweep(options['mmax'], options['kmax'], options['jobs'])
        self.emit_report(report, options)

    def arguments_tightness(self, parser):
        parser.add_argument('--n', type=int)
        parser.add_argument('--nmin', type=int, default=10)
        parser.add_argument('--nmax', type=int, default=200)

    def handle_tightness(self, **options):
        if options['n'] is not None:
            report = tightness_check(options['n'])
        else:
            report = sweeps.tightness_sweep(options['nmin'], options['nmax'], options['jobs'])
        self.emit_report(report, options)

    def arguments_replay(self, parser):
        parser.add_argument('--instance', required=True, help='JSON written by --dump')

    def handle_replay(self, **options):
        self.emit_report(replay(load_instance(options['instance'])), options)
