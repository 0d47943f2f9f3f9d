from group_core.serializers import dump_gset
from constructions.serializers import Measure0WitnessSerializer
from constructions.services import (interval_set, measure0_check, measure0_witness, random_set,
                                    sidon, tightness_statistics)

from cli.base import DiffrepCommand
from cli.services import parse_rational


class Command(DiffrepCommand):
    help = 'Build example sets; outputs are set files that compute and verify accept'
    targets = {
        'sidon': 'greedy Sidon set in Z',
        'measure0': 'the A = P + Λ witness with few large values of r_A',
        'interval': 'the interval [a, b] in a group',
        'random': 'a seeded uniform subset of a group',
    }

    def arguments_sidon(self, parser):
        parser.add_argument('--size', type=int, required=True)

    def handle_sidon(self, **options):
        self.emit_data(dump_gset(sidon(options['size'])), options)

    def arguments_measure0(self, parser):
        parser.add_argument('--epsilon', type=parse_rational, required=True)

    def handle_measure0(self, **options):
        witness = measure0_witness(options['epsilon'])
        self.emit_data(Measure0WitnessSerializer(witness).data, options)
        self.conclude(measure0_check(witness), options)

    def arguments_interval(self, parser):
        self.add_group_arguments(parser)
        parser.add_argument('--a', type=int, required=True)
        parser.add_argument('--b', type=int, required=True)

    def handle_interval(self, **options):
        A = interval_set(self.group_from_options(options), options['a'], options['b'])
        self.emit_data(dump_gset(A), options)

    def arguments_random(self, parser):
        self.add_group_arguments(parser)
        parser.add_argument('--size', type=int, required=True)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--stats', action='store_true', help='print mu against 2|A|^2/|A-A| instead')

    def handle_random(self, **options):
        A = random_set(self.group_from_options(options), options['size'], options['seed'])
        if options['stats']:
            self.emit_data(tightness_statistics(A), options)
        else:
            self.emit_data(dump_gset(A), options)
