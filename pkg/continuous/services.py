"""
Step functions on [0, 1] and their autocorrelation (f∘f)(x) = ∫ f(t) f(x+t) dt.

A step function with N cells has a piecewise-linear autocorrelation with
breakpoints at j/N, so everything except the transcendental parts of the
theorem bound is computed exactly with Fractions.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Optional, Tuple

import numpy as np

from group_core.exceptions import Degenerate, DiffrepError, HypothesisViolated, ZeroFunction
from extremal_verify.reports import (HOLDS, VACUOUS, VIOLATED, CheckReport, exact_verdict, finish,
                                     guarded_verdict, make_instance, to_json_value)

logger = logging.getLogger(__name__)

EXACT_POWER_LIMIT = 64
MAX_EXP_ARGUMENT = 700.0


def as_rational(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


@dataclass(frozen=True)
class StepFunction:
    """f = values[i] on [i/N, (i+1)/N)"""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        if not values:
            raise Degenerate("a step function needs at least one cell")
        if any(v < 0 for v in values):
            raise DiffrepError("step function values must be nonnegative")
        if not any(values):
            raise ZeroFunction("step function is identically zero")
        object.__setattr__(self, 'values', values)

    @classmethod
    def constant(cls, cells: int = 1, value=1) -> 'StepFunction':
        return cls(tuple([value] * cells))

    @property
    def cells(self) -> int:
        return len(self.values)

    @property
    def is_constant_on_support(self) -> bool:
        return len({v for v in self.values if v}) == 1

    def to_dict(self) -> dict:
        return {'cells': self.cells, 'values': [to_json_value(v) for v in self.values]}


@dataclass(frozen=True)
class Norms:
    l1: Fraction
    l2sq: Fraction
    rho_squared: Fraction

    @property
    def rho(self) -> float:
        return math.sqrt(self.rho_squared)


def norms(f: StepFunction) -> Norms:
    n = f.cells
    l1 = sum(f.values, Fraction(0)) / n
    l2sq = sum((v * v for v in f.values), Fraction(0)) / n
    return Norms(l1=l1, l2sq=l2sq, rho_squared=l2sq / (l1 * l1))


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous function on [-1, 1], linear between the breakpoints j/N"""

    cells: int
    values: Tuple[Fraction, ...]  # at j/N for j = -N..N

    def breakpoints(self) -> Iterator[Tuple[Fraction, Fraction]]:
        for j, value in enumerate(self.values, start=-self.cells):
            yield Fraction(j, self.cells), value

    def at_breakpoint(self, j: int) -> Fraction:
        if not -self.cells <= j <= self.cells:
            return Fraction(0)
        return self.values[j + self.cells]

    def at(self, x) -> Fraction:
        x = as_rational(x)
        if not -1 <= x <= 1:
            return Fraction(0)
        scaled = x * self.cells
        j = math.floor(scaled)
        t = scaled - j
        if t == 0:
            return self.at_breakpoint(j)
        return (1 - t) * self.at_breakpoint(j) + t * self.at_breakpoint(j + 1)

    def integral(self) -> Fraction:
        """Exact trapezoid sum, which is the exact integral of a piecewise-linear function"""
        pairs = zip(self.values, self.values[1:])
        return sum((a + b for a, b in pairs), Fraction(0)) / (2 * self.cells)

    def is_symmetric(self) -> bool:
        return self.values == self.values[::-1]


def autocorrelate(f: StepFunction) -> PiecewiseLinear:
    """(f∘f)(j/N) = (1/N) sum_i v_i v_{i+j}, computed on a common integer scale"""
    n = f.cells
    scale = lcm(*(v.denominator for v in f.values))
    ints = [int(v * scale) for v in f.values]
    lags = []
    for j in range(n + 1):
        lags.append(sum(a * b for a, b in zip(ints, ints[j:])))
    denominator = n * scale * scale
    right = [Fraction(c, denominator) for c in lags]
    values = tuple(right[:0:-1] + right)
    return PiecewiseLinear(cells=n, values=values)


def omega(f: StepFunction, delta, correlation: Optional[PiecewiseLinear] = None) -> Fraction:
    """sup of (f∘f)(x) / ||f||_1^2 over delta <= |x| <= 1"""
    delta = as_rational(delta)
    if delta <= 0:
        raise HypothesisViolated(f"delta must be positive, got {delta}")
    if delta >= 1:
        return Fraction(0)
    g = correlation or autocorrelate(f)
    best = g.at(delta)
    for x, value in g.breakpoints():
        if x > delta and value > best:
            best = value
    l1 = norms(f).l1
    return best / (l1 * l1)


# Continuous tuple count

def spread_volume(k: int, length=2, spread=1) -> Fraction:
    """
    Volume of k-tuples in an interval of the given length whose max - min
    is at most `spread`, by slicing at the minimum coordinate.
    """
    length, spread = as_rational(length), as_rational(spread)
    if k < 1:
        raise Degenerate(f"needs k >= 1, got {k}")
    if not 0 < spread <= length:
        raise Degenerate(f"spread {spread} must lie in (0, {length}]")
    # minimum in the first length - spread: the rest sit in a full window
    return k * (length - spread) * spread ** (k - 1) + spread ** k


def continuous_t(k: int) -> Fraction:
    """T_D^(k)(D) for D = [-1, 1]"""
    if k < 1:
        raise Degenerate(f"needs k >= 1, got {k}")
    return Fraction(k + 1)


def continuous_t_slicing(k: int) -> Fraction:
    return spread_volume(k, length=2, spread=1)


def continuous_t_monte_carlo(k: int, samples: int = 10 ** 6, seed: int = 0,
                             chunk: int = 100_000) -> float:
    if k < 1:
        raise Degenerate(f"needs k >= 1, got {k}")
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        points = rng.uniform(-1.0, 1.0, size=(size, k))
        hits += int(np.count_nonzero(np.ptp(points, axis=1) <= 1.0))
        remaining -= size
    return 2.0 ** k * hits / samples


def random_step_function(cells: int, seed: int, max_value: int = 8, nonconstant: bool = True,
                         min_value: int = 0) -> StepFunction:
    """
    Integer-valued step function drawn from numpy's default_rng, values in
    [min_value, max_value]. A positive min_value keeps rho close to 1.
    """
    if cells < 1:
        raise Degenerate(f"needs at least one cell, got {cells}")
    if nonconstant and cells < 2:
        raise Degenerate("a nonconstant step function needs two cells")
    if not 0 <= min_value < max_value:
        raise Degenerate(f"value range [{min_value}, {max_value}] is empty or negative")
    rng = np.random.default_rng(seed)
    while True:
        values = rng.integers(min_value, max_value + 1, size=cells).tolist()
        if not any(values):
            continue
        f = StepFunction(tuple(values))
        if nonconstant and f.is_constant_on_support:
            continue
        return f


# Theorem checkers

@dataclass
class FanReport(CheckReport):
    rho: float = 1.0
    delta: Fraction = None
    omega: Fraction = None
    L1: float = None

    def to_dict(self) -> dict:
        data = super().to_dict()
        data.update({
            'rho': self.rho,
            'delta': to_json_value(self.delta),
            'omega': to_json_value(self.omega),
            'L1': self.L1,
        })
        return data


def delta_limit(rho_squared: Fraction) -> Fraction:
    """min{1/(2 rho^12), 2^-8}"""
    return min(1 / (2 * rho_squared ** 6), Fraction(1, 2 ** 8))


def _fan_hypotheses(f: StepFunction, delta) -> Tuple[Norms, Fraction]:
    delta = as_rational(delta)
    measures = norms(f)
    if measures.rho_squared == 1:
        raise HypothesisViolated("f is constant on its support")
    limit = delta_limit(measures.rho_squared)
    if not 0 < delta <= limit:
        raise HypothesisViolated(f"delta = {delta} outside (0, {limit}]")
    return measures, delta


def log_rho(value: float, rho_squared: Fraction) -> float:
    return math.log(value) / (0.5 * math.log(rho_squared))


def theorem_fan_check(f: StepFunction, delta) -> FanReport:
    measures, delta = _fan_hypotheses(f, delta)
    rho = measures.rho
    omega_value = omega(f, delta)

    L1 = log_rho(1 / (2 * float(delta)), measures.rho_squared)
    term = max((2 * float(delta)) ** 0.125, math.log(L1) / L1)
    rhs = 1 - 8 * term
    L = L1 - log_rho(L1, measures.rho_squared)
    details = {
        'L': L,
        'refined_rhs': 1 - 4 * math.log(L) / L if L > 1 else None,
        'cauchy_schwarz_rhs': 1 - rho * math.sqrt(rho * rho - 1),
        'omega_float': float(omega_value),
        'l1': measures.l1,
        'l2sq': measures.l2sq,
    }
    verdict = VACUOUS if rhs <= 0 else guarded_verdict(omega_value, rhs, '>=')
    return finish(FanReport(
        name='fan',
        hypotheses_met=True,
        lhs=omega_value,
        rhs=rhs,
        relation='>=',
        verdict=verdict,
        details=details,
        instance=make_instance('fan', f=f, delta=delta),
        rho=rho,
        delta=delta,
        omega=omega_value,
        L1=L1,
    ))


def default_power(L1: float, rho_squared: Fraction) -> int:
    L = L1 - log_rho(L1, rho_squared)
    return max(1, math.floor(L / 2) - 1)


def _omega_k_in_logs(omega_value: Fraction, measures: Norms, delta: Fraction,
                     k: int) -> Tuple[float, Optional[float], str, dict]:
    """k ln(omega) against ln(1/(k+1) - 2 delta rho^(2k+2)), in floats"""
    lhs = k * math.log(omega_value) if omega_value > 0 else -math.inf
    log_tail = math.log(2 * delta) + (k + 1) * math.log(measures.rho_squared)
    rhs_value = 1 / (k + 1) - (math.exp(log_tail) if log_tail < MAX_EXP_ARGUMENT else math.inf)
    if rhs_value <= 0:
        return lhs, None, VACUOUS, {'rhs_value': rhs_value}
    rhs = math.log(rhs_value)
    return lhs, rhs, guarded_verdict(lhs, rhs, '>='), {'rhs_value': rhs_value}


def omega_k_report(f: StepFunction, delta, k: Optional[int] = None) -> CheckReport:
    """
    omega^k >= 1/(k+1) - 2 delta rho^(2k+2).

    Compared exactly for k up to EXACT_POWER_LIMIT. Past it both sides are
    reported as natural logarithms.
    """
    measures, delta = _fan_hypotheses(f, delta)
    L1 = log_rho(1 / (2 * float(delta)), measures.rho_squared)
    if k is None:
        k = default_power(L1, measures.rho_squared)
    if k < 1:
        raise Degenerate(f"needs k >= 1, got {k}")

    omega_value = omega(f, delta)
    half_harmonic = Fraction(1, 2 * (k + 1))
    details = {'k': k, 'omega': omega_value, 'half_harmonic': half_harmonic, 'L1': L1}
    if k <= EXACT_POWER_LIMIT:
        lhs = omega_value ** k
        rhs = Fraction(1, k + 1) - 2 * delta * measures.rho_squared ** (k + 1)
        verdict = VACUOUS if rhs <= 0 else exact_verdict(lhs, rhs, '>=')
        details.update(log_space=False, meets_half_harmonic=lhs >= half_harmonic)
    else:
        lhs, rhs, verdict, extra = _omega_k_in_logs(omega_value, measures, delta, k)
        details.update(extra, log_space=True, meets_half_harmonic=lhs >= -math.log(2 * (k + 1)))
    return finish(CheckReport(
        name='omega-k',
        hypotheses_met=True,
        lhs=lhs,
        rhs=rhs,
        relation='>=',
        verdict=verdict,
        details=details,
        instance=make_instance('omega-k', f=f, delta=delta, k=k),
    ))


def autocorrelation_checks(f: StepFunction) -> CheckReport:
    """Symmetry, (f∘f)(0) = ||f||_2^2 and total integral ||f||_1^2, all exact"""
    g = autocorrelate(f)
    measures = norms(f)
    facts = {
        'symmetric': g.is_symmetric(),
        'center_is_l2sq': g.at_breakpoint(0) == measures.l2sq,
        'integral_is_l1_squared': g.integral() == measures.l1 ** 2,
        'vanishes_at_ends': g.at_breakpoint(-f.cells) == 0 == g.at_breakpoint(f.cells),
    }
    return finish(CheckReport(
        name='autocorrelation',
        hypotheses_met=True,
        lhs=g.integral(),
        rhs=measures.l1 ** 2,
        relation='=',
        verdict=HOLDS if all(facts.values()) else VIOLATED,
        details=facts,
        instance=make_instance('autocorrelation', f=f),
    ))
