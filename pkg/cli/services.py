"""
Programmatic entry to the batch commands, with the exit-code contract:
0 for holds, vacuous, borderline or unmet; 2 for violated; 1 for usage or
input errors.
"""
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Sequence, TextIO

from django.core.management import call_command
from django.core.management.base import CommandError

from extremal_verify.reports import CheckReport, to_json_value
from extremal_verify.serializers import CheckReportSerializer

logger = logging.getLogger(__name__)

COMMANDS = ('compute', 'verify', 'construct', 'continuous')
FORMATS = ('json', 'csv', 'text')
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATED = 2

SYNOPSIS = """usage: manage.py <command> <target> [options]

  compute    reptable | energy | tcount | mu
  verify     intopt | id-ax | convexity | majorization | chain | modp | intverd | intverl |
             extd | arbg | fan | corollary | dense-bound | closed-form |
             energy-commutation | tightness | replay
  construct  sidon | measure0 | interval | random
  continuous autocorr | omega | omega-k | t

common options: --format {json,csv,text}  --jobs N  --record  --dump PATH
sets are JSON files: {"group": {"kind": "cyclic", "order": 7}, "elements": [-1, 0, 1]}
rationals are given as "p/q"
"""


def parse_rational(text: str) -> Fraction:
    """Exact parse of "p/q", an integer or a decimal literal"""
    text = str(text).strip()
    if 'e' in text.lower():
        raise CommandError(f"{text!r}: give rationals as p/q, not in exponent form")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CommandError(f"{text!r} is not a rational number")


def parse_int_list(text: str) -> list:
    try:
        return [int(part) for part in str(text).split(',') if part.strip()]
    except ValueError:
        raise CommandError(f"{text!r} is not a comma-separated list of integers")


def parse_rational_list(text: str) -> list:
    return [parse_rational(part) for part in str(text).split(',') if part.strip()]


def to_json(data: Any) -> str:
    return json.dumps(to_json_value(data), indent=2)


def _text_lines(data: dict, indent: str = '') -> Iterable[str]:
    for key, value in data.items():
        if isinstance(value, dict) and value:
            yield f"{indent}{key}:"
            yield from _text_lines(value, indent + '  ')
        else:
            yield f"{indent}{key}: {to_json_value(value)}"


def _field_csv(data: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['field', 'value'])
    for key, value in data.items():
        value = to_json_value(value)
        writer.writerow([key, json.dumps(value) if isinstance(value, (dict, list)) else value])
    return buffer.getvalue()


def format_report(report: CheckReport, fmt: str) -> str:
    data = CheckReportSerializer(report).data
    if fmt == 'json':
        return json.dumps(data, indent=2) + '\n'
    if fmt == 'csv':
        return _field_csv(data)
    lines = [report.summary(), f"hypotheses_met: {report.hypotheses_met}"]
    if report.witness is not None:
        lines.append(f"witness: {to_json_value(report.witness)}")
    lines.extend(_text_lines(report.details))
    return '\n'.join(lines) + '\n'


def format_data(data: dict, fmt: str, csv_writer: Optional[Callable[[], str]] = None) -> str:
    if fmt == 'json':
        return to_json(data) + '\n'
    if fmt == 'csv':
        return csv_writer() if csv_writer else _field_csv(data)
    return '\n'.join(_text_lines(data)) + '\n'


def run(argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(argv)
    if not argv or argv[0] in ('-h', '--help', 'help'):
        stderr.write(SYNOPSIS)
        return EXIT_OK if argv else EXIT_USAGE
    if argv[0] not in COMMANDS:
        stderr.write(f"unknown command {argv[0]!r}\n{SYNOPSIS}")
        return EXIT_USAGE

    try:
        call_command(argv[0], *argv[1:], stdout=stdout, stderr=stderr)
    except CommandError as e:
        returncode = getattr(e, 'returncode', EXIT_USAGE)
        if returncode == EXIT_VIOLATED:
            logger.error(f"{' '.join(argv)}: {e}")
        else:
            stderr.write(f"error: {e}\n{SYNOPSIS}")
        return returncode
    except SystemExit as e:
        # argparse --help inside a subcommand
        return e.code or EXIT_OK
    return EXIT_OK
