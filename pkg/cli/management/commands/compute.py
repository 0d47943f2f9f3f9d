from repfn.serializers import RepTableSerializer, rep_table_csv
from repfn.services import AUTO, DIRECT, FFT, mu_k_witness, mu_witness, rep_table
from energy_tcount.services import VIA_RK, VIA_RL, energy_kl, t_count, t_count_naive

from cli.base import DiffrepCommand


class Command(DiffrepCommand):
    help = 'Compute r_A, E_{k,l}, T_D^(k) and mu for sets read from JSON files'
    targets = {
        'reptable': 'representation function r_A(d) for every d',
        'energy': 'higher energy E_{k,l}(A), both sides of the commutation',
        'tcount': 'T_D^(k)(A): k-tuples of A with all differences in D',
        'mu': 'mu(A), or mu^(k)(A) for k >= 3',
    }

    def arguments_reptable(self, parser):
        parser.add_argument('--set', required=True, help='set file A')
        parser.add_argument('--method', choices=[AUTO, DIRECT, FFT], default=AUTO)

    def handle_reptable(self, **options):
        table = rep_table(self.load_set(options['set']), options['method'])
        self.emit_data(RepTableSerializer(table).data, options, lambda: rep_table_csv(table))

    def arguments_energy(self, parser):
        parser.add_argument('--set', required=True)
        parser.add_argument('--k', type=int, default=2)
        parser.add_argument('--l', type=int, default=2)

    def handle_energy(self, **options):
        A = self.load_set(options['set'])
        k, l = options['k'], options['l']
        sides = {side: energy_kl(A, k, l, side).value for side in (VIA_RK, VIA_RL)}
        self.emit_data({'k': k, 'l': l, **sides, 'agree': sides[VIA_RK] == sides[VIA_RL]}, options)

    def arguments_tcount(self, parser):
        parser.add_argument('--set', required=True, help='set file A')
        parser.add_argument('--against', required=True, help='set file D')
        parser.add_argument('--k', type=int, required=True)
        parser.add_argument('--naive', action='store_true', help='also run the |A|^k brute force')

    def handle_tcount(self, **options):
        A = self.load_set(options['set'])
        D = self.load_set(options['against'])
        result = t_count(D, A, options['k'])
        data = {'k': result.k, 'value': result.value, 'set_size': len(A), 'against_size': len(D)}
        if options['naive']:
            data['naive'] = t_count_naive(D, A, options['k'])
        self.emit_data(data, options)

    def arguments_mu(self, parser):
        parser.add_argument('--set', required=True)
        parser.add_argument('--k', type=int, default=2)

    def handle_mu(self, **options):
        A = self.load_set(options['set'])
        k = options['k']
        value, witness = mu_witness(A) if k == 2 else mu_k_witness(A, k)
        if witness is not None:
            decode = A.group.decode
            witness = decode(witness) if k == 2 else [decode(d) for d in witness]
        self.emit_data({'k': k, 'mu': value, 'witness': witness}, options)
