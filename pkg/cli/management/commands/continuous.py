from continuous.serializers import piecewise_linear_csv
from continuous.services import (autocorrelate, continuous_t, continuous_t_monte_carlo,
                                 continuous_t_slicing, norms, omega, omega_k_report)

from cli.base import DiffrepCommand
from cli.services import parse_rational


class Command(DiffrepCommand):
    help = 'Step functions on [0, 1]: autocorrelation, omega and the continuous tuple count'
    targets = {
        'autocorr': 'breakpoint values of f∘f on [-1, 1]',
        'omega': 'sup of (f∘f)(x) / ||f||_1^2 over delta <= |x| <= 1',
        'omega-k': 'omega^k against 1/(k+1) - 2 delta rho^(2k+2)',
        't': 'T_D^(k)(D) for D = [-1, 1]: closed form, slicing and Monte Carlo',
    }

    def arguments_autocorr(self, parser):
        parser.add_argument('--function', required=True, help='step-function file')

    def handle_autocorr(self, **options):
        g = autocorrelate(self.load_function(options['function']))
        data = {
            'cells': g.cells,
            'integral': g.integral(),
            'breakpoints': [[x, value] for x, value in g.breakpoints()],
        }
        self.emit_data(data, options, csv_writer=lambda: piecewise_linear_csv(g))

    def arguments_omega(self, parser):
        parser.add_argument('--function', required=True)
        parser.add_argument('--delta', type=parse_rational, required=True)

    def handle_omega(self, **options):
        f = self.load_function(options['function'])
        measures = norms(f)
        self.emit_data({
            'delta': options['delta'],
            'omega': omega(f, options['delta']),
            'l1': measures.l1,
            'l2sq': measures.l2sq,
            'rho_squared': measures.rho_squared,
        }, options)

    def arguments_omega_k(self, parser):
        parser.add_argument('--function', required=True)
        parser.add_argument('--delta', type=parse_rational, required=True)
        parser.add_argument('--k', type=int, help='defaults to floor(L/2) - 1')

    def handle_omega_k(self, **options):
        f = self.load_function(options['function'])
        self.emit_report(omega_k_report(f, options['delta'], options['k']), options)

    def arguments_t(self, parser):
        parser.add_argument('--k', type=int, required=True)
        parser.add_argument('--samples', type=int, default=10 ** 6)
        parser.add_argument('--seed', type=int, default=0)

    def handle_t(self, **options):
        k = options['k']
        self.emit_data({
            'k': k,
            'exact': continuous_t(k),
            'slicing': continuous_t_slicing(k),
            'monte_carlo': continuous_t_monte_carlo(k, options['samples'], options['seed']),
        }, options)
