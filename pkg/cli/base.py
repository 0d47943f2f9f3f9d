"""
Shared plumbing for the compute / verify / construct / continuous commands:
one subparser per target, the common flags, input loading and the
violated-verdict exit path.
"""
import json
import logging
import sys
from typing import Callable, Dict, Optional

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from group_core.exceptions import DiffrepError
from group_core.serializers import load_gset
from group_core.services import GroupSpec, GSet
from continuous.serializers import load_step_function
from continuous.services import StepFunction
from extremal_verify.models import VerificationRun
from extremal_verify.reports import CheckReport

from .services import EXIT_VIOLATED, FORMATS, format_data, format_report, parse_int_list, run, to_json

logger = logging.getLogger(__name__)


class DiffrepCommand(BaseCommand):
    # target name -> help; each target has arguments_<name> and handle_<name>
    targets: Dict[str, str] = {}

    def run_from_argv(self, argv):
        sys.exit(run(argv[1:]))

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='target', required=True, metavar='target')
        for name, help_text in self.targets.items():
            sub = subparsers.add_parser(name, help=help_text)
            sub.add_argument('--format', choices=FORMATS, default='text')
            sub.add_argument('--jobs', type=int, default=None, help='worker processes for sweeps')
            sub.add_argument('--record', action='store_true', help='store the report as a VerificationRun')
            sub.add_argument('--dump', default=None, help='write the replay instance JSON here')
            getattr(self, self._method('arguments', name))(sub)

    @staticmethod
    def _method(prefix: str, target: str) -> str:
        return f"{prefix}_{target.replace('-', '_')}"

    def handle(self, *args, **options):
        target = options['target']
        logger.debug(f"{self.__module__.rsplit('.', 1)[-1]} {target}")
        try:
            getattr(self, self._method('handle', target))(**options)
        except (DiffrepError, ValidationError) as e:
            detail = e.detail if isinstance(e, ValidationError) else e
            raise CommandError(f"{target}: {detail}")
        except (OSError, json.JSONDecodeError) as e:
            raise CommandError(f"{target}: cannot read input ({e})")

    # Input

    def load_set(self, path: str) -> GSet:
        return load_gset(path)

    def load_function(self, path: str) -> StepFunction:
        return load_step_function(path)

    def group_from_options(self, options) -> GroupSpec:
        given = [key for key in ('order', 'halfwidth', 'orders') if options.get(key)]
        if len(given) != 1:
            raise CommandError("give exactly one of --order, --halfwidth, --orders")
        if options.get('order'):
            return GroupSpec.cyclic(options['order'])
        if options.get('halfwidth'):
            return GroupSpec.integer_window(options['halfwidth'])
        return GroupSpec.product(*parse_int_list(options['orders']))

    def add_group_arguments(self, parser):
        parser.add_argument('--order', type=int, help='cyclic group C_n')
        parser.add_argument('--halfwidth', type=int, help='integer window [-W, W]')
        parser.add_argument('--orders', help='product group, e.g. 2,4')

    def require(self, options, *names):
        missing = [f"--{name.replace('_', '-')}" for name in names if options.get(name) is None]
        if missing:
            raise CommandError(f"{options['target']} needs {', '.join(missing)}")

    # Output

    def emit_data(self, data: dict, options, csv_writer: Optional[Callable[[], str]] = None):
        self.stdout.write(format_data(data, options['format'], csv_writer), ending='')

    def emit_report(self, report: CheckReport, options):
        self.stdout.write(format_report(report, options['format']), ending='')
        self.conclude(report, options)

    def conclude(self, report: CheckReport, options):
        """--record, --dump and the exit code for a violated verdict"""
        if options.get('record'):
            run_record = VerificationRun.objects.record(report)
            self.stderr.write(f"recorded run {run_record.pk}")
        if options.get('dump'):
            with open(options['dump'], 'w', encoding='utf-8') as fh:
                fh.write(to_json(report.instance) + '\n')
        if report.violated:
            if not options.get('dump'):
                self.stderr.write(to_json(report.instance))
            raise CommandError(f"{report.summary()}", returncode=EXIT_VIOLATED)
