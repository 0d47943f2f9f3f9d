"""
Example families: intervals, random sets, greedy Sidon sets and the
sumset witness A = P + Λ whose large values of r_A are sparse.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np

from group_core.exceptions import Degenerate, SizeOutOfRange
from group_core.services import GroupSpec, GSet, interval
from repfn.services import diff_set, mu, rep_table
from extremal_verify.reports import (HOLDS, VIOLATED, CheckReport, exact_verdict, finish,
                                     make_instance, to_json_value)

logger = logging.getLogger(__name__)


def mian_chowla(size: int) -> List[int]:
    """
    Greedy Sidon sequence from 0: each new term is the least integer whose
    differences with the earlier terms are all new. Differences are kept as
    bits of one integer.
    """
    if size < 1:
        raise Degenerate(f"Sidon size must be >= 1, got {size}")
    terms = [0]
    seen = 0
    candidate = 0
    while len(terms) < size:
        candidate += 1
        fresh = 0
        for a in terms:
            fresh |= 1 << (candidate - a)
        if fresh & seen:
            continue
        seen |= fresh
        terms.append(candidate)
    return terms


def sidon(size: int) -> GSet:
    terms = mian_chowla(size)
    return GSet.from_elements(GroupSpec.integer_window(max(terms[-1], 1)), terms)


def interval_set(g: GroupSpec, a: int, b: int) -> GSet:
    return interval(g, a, b)


def random_set(g: GroupSpec, size: int, seed: int) -> GSet:
    """Uniform sample without replacement; same seed, same set"""
    if not 0 <= size <= g.size:
        raise SizeOutOfRange(f"cannot draw {size} elements from {g.describe()}")
    rng = np.random.default_rng(seed)
    bits = 0
    for position in rng.choice(g.size, size=size, replace=False).tolist():
        bits |= 1 << position
    return GSet(g, bits)


def tightness_statistics(A: GSet) -> dict:
    """mu(A) against the average 2|A|^2/|A-A| it is compared with"""
    size_d = len(diff_set(A))
    average = Fraction(2 * len(A) ** 2, size_d)
    value = mu(A)
    return {
        'size': len(A),
        'difference_size': size_d,
        'mu': value,
        'twice_average': average,
        'ratio': value / average,
    }


# Sparse large values

def lambda_size(epsilon: Fraction) -> int:
    """Least s with s > sqrt(2/epsilon) + 1"""
    s = 2
    while (s - 1) ** 2 <= 2 / epsilon:
        s += 1
    return s


def min_nonzero_double_difference(terms: List[int]) -> int:
    """min |a + b - c - d| over a, b, c, d in terms, excluding 0"""
    sums = sorted({a + b for a in terms for b in terms})
    gaps = [y - x for x, y in zip(sums, sums[1:])]
    return min(gaps) if gaps else 0


@dataclass(frozen=True)
class Measure0Witness:
    epsilon: Fraction
    n: int
    base: List[int]
    multiplier: int
    lambda_set: GSet
    A: GSet
    difference_size: int
    threshold_count: int
    bound: Fraction
    invariants: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'epsilon': to_json_value(self.epsilon),
            'n': self.n,
            'base': list(self.base),
            'multiplier': self.multiplier,
            'lambda': list(self.lambda_set),
            'size': len(self.A),
            'difference_size': self.difference_size,
            'threshold_count': self.threshold_count,
            'bound': to_json_value(self.bound),
            'invariants': dict(self.invariants),
            'set': self.A.to_dict(),
        }


def measure0_witness(epsilon) -> Measure0Witness:
    """
    A = [1, n] + M * Λ0 with Λ0 greedy Sidon and M large enough that
    (2P - 2P) and (2Λ - 2Λ) meet only at 0.
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise Degenerate(f"epsilon must lie in (0, 1), got {epsilon}")

    n = math.ceil(1 / epsilon) + 2
    base = mian_chowla(lambda_size(epsilon))
    gap = min_nonzero_double_difference(base)
    multiplier = (4 * n - 4) // gap + 1
    lambdas = [multiplier * x for x in base]
    members = sorted({p + x for p in range(1, n + 1) for x in lambdas})
    halfwidth = max(members[-1], members[-1] - members[0]) + 1
    group = GroupSpec.integer_window(halfwidth)
    A = GSet.from_elements(group, members)
    lambda_set = GSet.from_elements(group, lambdas)

    table = rep_table(A)
    size_d = len(table.support())
    # r_A(d) >= (1 - eps) 2|A|^2 / |A-A|, cleared of denominators
    threshold = (1 - epsilon) * 2 * len(A) ** 2
    count = sum(1 for _, c in table.items() if c * size_d >= threshold)
    s = len(base)
    invariants = {
        'n_large': n >= 1 / epsilon + 2,
        'lambda_large': (s - 1) ** 2 > 2 / epsilon,
        'separated': multiplier * gap > 4 * n - 4,
        'size': len(A) == s * n,
        'difference_size': size_d == (2 * n - 1) * (s * s - s + 1),
    }
    logger.info(f"measure0 witness for eps={epsilon}: |A|={len(A)}, |A-A|={size_d}, count={count}")
    return Measure0Witness(
        epsilon=epsilon,
        n=n,
        base=base,
        multiplier=multiplier,
        lambda_set=lambda_set,
        A=A,
        difference_size=size_d,
        threshold_count=count,
        bound=2 * epsilon * size_d,
        invariants=invariants,
    )


def measure0_check(witness: Measure0Witness) -> CheckReport:
    verdict = exact_verdict(witness.threshold_count, witness.bound, '<=')
    if not all(witness.invariants.values()):
        verdict = VIOLATED
    return finish(CheckReport(
        name='measure0',
        hypotheses_met=True,
        lhs=witness.threshold_count,
        rhs=witness.bound,
        verdict=verdict,
        details={
            'n': witness.n,
            'multiplier': witness.multiplier,
            'size': len(witness.A),
            'difference_size': witness.difference_size,
            'invariants': witness.invariants,
        },
        instance=make_instance('measure0', epsilon=witness.epsilon),
    ))


def sidon_check(size: int) -> CheckReport:
    """Greedy output is Sidon: mu = 1"""
    S = sidon(size)
    value = mu(S) if size >= 2 else 1
    return finish(CheckReport(
        name='sidon',
        hypotheses_met=True,
        lhs=value,
        rhs=1,
        relation='=',
        verdict=HOLDS if value == 1 else VIOLATED,
        details={'elements': S.elements()},
        instance=make_instance('sidon', size=size),
    ))
