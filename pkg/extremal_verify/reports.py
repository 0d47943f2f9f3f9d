"""
CheckReport: the verdict every checker returns, and the comparison helpers
that produce verdicts.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Any, Dict, Optional

from django.conf import settings

from group_core.services import GSet

logger = logging.getLogger(__name__)

HOLDS = 'holds'
VIOLATED = 'violated'
VACUOUS = 'vacuous'
BORDERLINE = 'borderline'
HYPOTHESES_UNMET = 'hypotheses_unmet'

VERDICT_CHOICES = (
    (HOLDS, 'Holds'),
    (VIOLATED, 'Violated'),
    (VACUOUS, 'Vacuous (nonpositive bound)'),
    (BORDERLINE, 'Borderline (within guard band)'),
    (HYPOTHESES_UNMET, 'Hypotheses not met'),
)

RELATIONS = {
    '<=': lambda a, b: a <= b,
    '<': lambda a, b: a < b,
    '>=': lambda a, b: a >= b,
    '>': lambda a, b: a > b,
    '=': lambda a, b: a == b,
}


# int -> str conversion is capped at 4300 digits by default
LONG_VALUE_BITS = 4000


def guard_band() -> float:
    return getattr(settings, 'DIFFREP_GUARD_BAND', 1e-9)


def _too_long(value: Fraction) -> bool:
    return max(value.numerator.bit_length(), value.denominator.bit_length()) > LONG_VALUE_BITS


def scientific(value: Fraction) -> str:
    """Decimal scientific form of a rational too long to print exactly"""
    if value == 0:
        return '0'
    exponent = math.log10(abs(value.numerator)) - math.log10(value.denominator)
    whole = math.floor(exponent)
    sign = '-' if value < 0 else ''
    return f"{sign}{10 ** (exponent - whole):.9f}e{whole:+d}"


def to_json_value(value: Any) -> Any:
    """
    Exact values become JSON: integers stay integers, other rationals become
    "p/q". Rationals past LONG_VALUE_BITS are written in scientific form.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return scientific(Fraction(value)) if value.bit_length() > LONG_VALUE_BITS else value
    if isinstance(value, Rational):
        value = Fraction(value)
        if _too_long(value):
            return scientific(value)
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    if isinstance(value, GSet):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    return value


def make_instance(check: str, **params) -> dict:
    """Replayable description of a single check"""
    return {'check': check, 'params': to_json_value(params)}


@dataclass
class CheckReport:
    name: str
    hypotheses_met: bool
    lhs: Any = None
    rhs: Any = None
    relation: str = '<='
    witness: Any = None
    verdict: str = HOLDS
    details: Dict[str, Any] = field(default_factory=dict)
    instance: Optional[dict] = None

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATED

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'hypotheses_met': self.hypotheses_met,
            'lhs': to_json_value(self.lhs),
            'rhs': to_json_value(self.rhs),
            'relation': self.relation,
            'witness': to_json_value(self.witness),
            'verdict': self.verdict,
            'details': to_json_value(self.details),
            'instance': self.instance,
        }

    def summary(self) -> str:
        lhs, rhs = (to_json_value(v) if isinstance(v, Rational) else v for v in (self.lhs, self.rhs))
        return f"{self.name}: {lhs} {self.relation} {rhs} -> {self.verdict}"


def exact_verdict(lhs, rhs, relation: str) -> str:
    return HOLDS if RELATIONS[relation](lhs, rhs) else VIOLATED


def guarded_verdict(lhs, rhs, relation: str) -> str:
    """
    Verdict for a comparison whose right side went through floating point.
    Margins inside the guard band are borderline, never violated.
    """
    band = guard_band()
    if relation in ('>=', '>'):
        margin = float(lhs) - float(rhs)
    elif relation in ('<=', '<'):
        margin = float(rhs) - float(lhs)
    else:
        return HOLDS if abs(float(lhs) - float(rhs)) <= band else VIOLATED
    if margin > band:
        return HOLDS
    if margin < -band:
        return VIOLATED
    return BORDERLINE


def finish(report: CheckReport) -> CheckReport:
    if report.verdict == VIOLATED:
        logger.error(f"violated: {report.summary()} witness={report.witness}")
    elif logger.isEnabledFor(logging.DEBUG):
        logger.debug(report.summary())
    return report


def unmet(name: str, details: dict, instance: Optional[dict] = None, **sides) -> CheckReport:
    return CheckReport(
        name=name, hypotheses_met=False, verdict=HYPOTHESES_UNMET,
        details=details, instance=instance, **sides,
    )
