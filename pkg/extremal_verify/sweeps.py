"""
Exhaustive and sampled drivers over the single-instance checkers.

Every sweep splits its search space into partitions, maps a module-level
worker over them (in-process, or over a process pool when jobs > 1) and
folds the per-partition tallies into one CheckReport. Partitions come back
in submission order, so the aggregate and the first reported violation are
the same for every worker count.
"""
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product as tuples
from typing import Callable, Iterable, List, Optional, Sequence

import django
import numpy as np
from django.conf import settings

from group_core.exceptions import CapExceeded, HypothesisViolated
from group_core.services import (GroupSpec, GSet, centered_interval, enumerate_symmetric_sets,
                                 interval, is_prime, rearrange, symmetric_subsets)
from constructions.services import random_set
from continuous.services import (StepFunction, delta_limit, norms, omega_k_report,
                                 random_step_function, theorem_fan_check)
from energy_tcount.services import TupleCounter, verify_id_ax

from .reports import HOLDS, HYPOTHESES_UNMET, VIOLATED, CheckReport, finish, make_instance
from .services import (check_basic_chain, convexity_check, corollary_check, dense_bound_check,
                       energy_commutation_check, interval_closed_form_check, majorization_check,
                       slice_sizes, theorem_extD_check, theorem_modp_check, tightness_check,
                       verify_intopt)

logger = logging.getLogger(__name__)

MODP_DELTAS = (Fraction(1, 10), Fraction(1, 5), Fraction(3, 10))
MODP_CHUNK = 4096
CHAIN_PRIMES = (7, 11, 13, 17, 19, 23, 29, 31)
FAN_DELTAS = tuple(Fraction(1, 2 ** e) for e in (8, 10, 12, 16, 20, 32, 36, 40))
# odd fan instances draw values from [4, 8], which keeps rho^2 <= 9/8
FAN_LOW_SPREAD_MIN = 4
# (k, p, n, delta): [1, n] in C_p passes the extD doubling and size gates
EXTD_MET_INTERVALS = ((3, 1801, 600, Fraction(10, 91)),)


class Tally:
    """Per-partition verdict counts, overall and per check name, plus the first violated report"""

    def __init__(self):
        self.checks = 0
        self.verdicts = Counter()
        self.by_check = {}
        self.violation = None

    def count(self, verdict: str, report_factory: Optional[Callable[[], CheckReport]] = None):
        self.checks += 1
        self.verdicts[verdict] += 1
        if verdict == VIOLATED and self.violation is None and report_factory is not None:
            self.violation = report_factory().to_dict()

    def add(self, report: CheckReport):
        self.count(report.verdict, lambda: report)
        self.by_check.setdefault(report.name, Counter())[report.verdict] += 1

    def as_dict(self) -> dict:
        return {
            'checks': self.checks,
            'verdicts': dict(self.verdicts),
            'by_check': {name: dict(counts) for name, counts in self.by_check.items()},
            'violation': self.violation,
        }


def resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None:
        jobs = getattr(settings, 'DIFFREP_DEFAULT_JOBS', 1)
    return max(1, int(jobs))


def _init_worker():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'diffrep.settings')
    django.setup()


def _collect(name: str, results: Iterable[dict], total: int) -> List[dict]:
    collected = []
    for index, result in enumerate(results, start=1):
        collected.append(result)
        logger.info(f"{name}: partition {index}/{total} done ({result['checks']} checks)")
    return collected


def run_partitions(name: str, worker: Callable[[tuple], dict], partitions: Sequence[tuple],
                   jobs: Optional[int] = None) -> List[dict]:
    partitions = list(partitions)
    jobs = resolve_jobs(jobs)
    logger.info(f"{name}: {len(partitions)} partitions on {jobs} worker(s)")
    if jobs == 1 or len(partitions) <= 1:
        return _collect(name, map(worker, partitions), len(partitions))
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker) as executor:
        return _collect(name, executor.map(worker, partitions), len(partitions))


def aggregate(name: str, results: Sequence[dict], params: dict,
              notes: Optional[dict] = None) -> CheckReport:
    """Fold partition tallies; params are what replay needs, notes only go to details"""
    verdicts = Counter()
    by_check = {}
    checks = 0
    violation = None
    for result in results:
        checks += result['checks']
        verdicts.update(result['verdicts'])
        for check, counts in result.get('by_check', {}).items():
            by_check.setdefault(check, Counter()).update(counts)
        violation = violation or result['violation']

    violated = verdicts.get(VIOLATED, 0)
    report = CheckReport(
        name=name,
        hypotheses_met=True,
        lhs=violated,
        rhs=0,
        relation='=',
        verdict=VIOLATED if violated else HOLDS,
        witness=violation['instance'] if violation else None,
        details={
            'checks': checks,
            'verdicts': dict(verdicts),
            'by_check': {check: dict(counts) for check, counts in by_check.items()},
            'first_violation': violation,
            **params,
            **(notes or {}),
        },
        instance=violation['instance'] if violation else make_instance(name, **params),
    )
    logger.info(f"{name}: {checks} checks, verdicts {dict(verdicts)}")
    return finish(report)


def _require_exhaustive_prime(p: int):
    if not is_prime(p) or p < 5:
        raise HypothesisViolated(f"exhaustive sweeps need a prime p >= 5, got {p}")
    allowed = getattr(settings, 'DIFFREP_EXHAUSTIVE_PRIMES', [5, 7, 11, 13])
    if p not in allowed:
        raise CapExceeded(f"p = {p} not in DIFFREP_EXHAUSTIVE_PRIMES {allowed}")


def _symmetric_partitions(p: int, *extra) -> List[tuple]:
    return [(p, D.bits) + extra for D in enumerate_symmetric_sets(GroupSpec.cyclic(p))]


# Rearrangement sweeps

def _intopt_partition(args: tuple) -> dict:
    p, d_bits, k_max = args
    g = GroupSpec.cyclic(p)
    D = GSet(g, d_bits)
    counter = TupleCounter(D)
    bar_counter = TupleCounter(rearrange(D))
    bar_values = {
        (size, k): bar_counter.count(centered_interval(g, size), k)
        for size in range(1, p + 1) for k in range(1, k_max + 1)
    }
    tally = Tally()
    for mask in range(1, 1 << p):
        A = GSet(g, mask)
        size = mask.bit_count()
        for k in range(1, k_max + 1):
            lhs = counter.count(A, k)
            verdict = HOLDS if lhs <= bar_values[size, k] else VIOLATED
            tally.count(verdict, lambda: verify_intopt(A, D, k, counter, bar_counter))
    return tally.as_dict()


def exhaustive_intopt(p: int, k_max: int = 3, jobs: Optional[int] = None) -> CheckReport:
    """Every symmetric D, every nonempty A in C_p and every k <= k_max"""
    _require_exhaustive_prime(p)
    results = run_partitions('intopt-sweep', _intopt_partition, _symmetric_partitions(p, k_max), jobs)
    return aggregate('intopt-sweep', results, {'p': p, 'k_max': k_max})


def _majorization_partition(args: tuple) -> dict:
    p, d_bits = args
    g = GroupSpec.cyclic(p)
    D = GSet(g, d_bits)
    D_bar = rearrange(D)
    rearranged = {size: slice_sizes(centered_interval(g, size), D_bar) for size in range(1, p + 1)}
    tally = Tally()
    for mask in range(1, 1 << p):
        A = GSet(g, mask)
        ours, theirs = slice_sizes(A, D), rearranged[mask.bit_count()]
        ours_sum = theirs_sum = 0
        verdict = HOLDS
        for x, y in zip(ours, theirs):
            ours_sum += x
            theirs_sum += y
            if ours_sum > theirs_sum:
                verdict = VIOLATED
                break
        tally.count(verdict, lambda: majorization_check(A, D))
    return tally.as_dict()


def exhaustive_majorization(p: int, jobs: Optional[int] = None) -> CheckReport:
    _require_exhaustive_prime(p)
    results = run_partitions('majorization-sweep', _majorization_partition,
                             _symmetric_partitions(p), jobs)
    return aggregate('majorization-sweep', results, {'p': p})


def _convexity_partition(args: tuple) -> dict:
    p, first, k_max = args
    tally = Tally()
    tally.add(convexity_check(p, 2, (first,)))
    for k in range(3, k_max + 1):
        for rest in tuples(range(p), repeat=k - 2):
            tally.add(convexity_check(p, k, (first,) + rest))
    return tally.as_dict()


def exhaustive_convexity(p: int, k_max: int = 4, jobs: Optional[int] = None) -> CheckReport:
    """All shift tuples (d_1..d_{k-1}) in C_p for 2 <= k <= k_max, split by d_1"""
    if not is_prime(p) or p < 3:
        raise HypothesisViolated(f"convexity sweep needs a prime p >= 3, got {p}")
    cap = getattr(settings, 'DIFFREP_EXHAUSTIVE_ORDER_CAP', 31)
    if p > cap:
        raise CapExceeded(f"p = {p} exceeds exhaustive cap {cap}")
    partitions = [(p, first, k_max) for first in range(p)]
    results = run_partitions('convexity-sweep', _convexity_partition, partitions, jobs)
    return aggregate('convexity-sweep', results, {'p': p, 'k_max': k_max})


# Tuple-count bound sweeps

def _corollary_partition(args: tuple) -> dict:
    p, d_bits, ks = args
    D = GSet(GroupSpec.cyclic(p), d_bits)
    counter = TupleCounter(D)
    tally = Tally()
    for k in ks:
        if 3 <= k <= len(D) and 3 * len(D) <= 2 * (p + 1):
            tally.add(corollary_check(D, k, counter))
    return tally.as_dict()


def corollary_sweep(primes: Sequence[int] = (5, 7, 11, 13), ks: Sequence[int] = (3, 4, 5),
                    jobs: Optional[int] = None) -> CheckReport:
    partitions = []
    for p in primes:
        _require_exhaustive_prime(p)
        partitions.extend(_symmetric_partitions(p, tuple(ks)))
    results = run_partitions('corollary-sweep', _corollary_partition, partitions, jobs)
    return aggregate('corollary-sweep', results, {'primes': list(primes), 'ks': list(ks)})


def dense_sweep_groups() -> List[GroupSpec]:
    groups = [GroupSpec.cyclic(n) for n in range(2, 13)]
    return groups + [GroupSpec.product(2, 4), GroupSpec.product(2, 2, 2)]


def _dense_partition(args: tuple) -> dict:
    group, k_max = args
    tally = Tally()
    for D in symmetric_subsets(group):
        counter = TupleCounter(D)
        for k in range(1, k_max + 1):
            report = dense_bound_check(D, k, counter)
            if report.verdict != HYPOTHESES_UNMET:
                tally.add(report)
    return tally.as_dict()


def dense_bound_sweep(k_max: int = 4, jobs: Optional[int] = None) -> CheckReport:
    """Every symmetric D in the small groups whose tau is admissible for some k <= k_max"""
    partitions = [(group, k_max) for group in dense_sweep_groups()]
    results = run_partitions('dense-bound-sweep', _dense_partition, partitions, jobs)
    return aggregate('dense-bound-sweep', results, {'k_max': k_max},
                     {'groups': [group.describe() for group in dense_sweep_groups()]})


def _closed_form_partition(args: tuple) -> dict:
    m, k_max = args
    tally = Tally()
    for k in range(1, k_max + 1):
        tally.add(interval_closed_form_check(m, k))
    return tally.as_dict()


def closed_form_sweep(m_max: int = 8, k_max: int = 5, jobs: Optional[int] = None) -> CheckReport:
    partitions = [(m, k_max) for m in range(m_max + 1)]
    results = run_partitions('closed-form-sweep', _closed_form_partition, partitions, jobs)
    return aggregate('closed-form-sweep', results, {'m_max': m_max, 'k_max': k_max})


# Theorem sweeps

def _difference_size(g: GroupSpec, bits: int) -> int:
    spread = 0
    for a in GSet(g, bits):
        spread |= g.shift_bits(bits, g.neg(a))
    return spread.bit_count()


def _modp_partition(args: tuple) -> dict:
    p, delta, start, stop = args
    g = GroupSpec.cyclic(p)
    a, b = delta.numerator, delta.denominator
    tally = Tally()
    for half in range(start, stop):
        bits = (half << 1) | 1
        size = bits.bit_count()
        size_d = _difference_size(g, bits)
        if 3 * size_d > 2 * (p + 1) or not Fraction(size_d, size) ** b < Fraction(size) ** a:
            tally.count(HYPOTHESES_UNMET)
            continue
        tally.add(theorem_modp_check(GSet(g, bits), delta))
    return tally.as_dict()


def modp_sweep(primes: Optional[Sequence[int]] = None, deltas: Sequence = MODP_DELTAS,
               jobs: Optional[int] = None) -> CheckReport:
    """
    Every A in C_p up to translation (0 in A) for each prime and delta.
    The theorem is translation invariant, so this is exhaustive.
    """
    primes = list(primes or [p for p in range(2, 20) if is_prime(p)])
    deltas = [Fraction(d) for d in deltas]
    partitions = []
    for p in primes:
        if not is_prime(p):
            raise HypothesisViolated(f"modp sweep needs primes, got {p}")
        halves = 1 << (p - 1)
        for delta in deltas:
            for start in range(0, halves, MODP_CHUNK):
                partitions.append((p, delta, start, min(start + MODP_CHUNK, halves)))
    results = run_partitions('modp-sweep', _modp_partition, partitions, jobs)
    return aggregate('modp-sweep', results, {'primes': primes, 'deltas': deltas},
                     {'up_to_translation': True})


def extd_deltas(k: int) -> List[Fraction]:
    return [Fraction(1, 4 * k), Fraction(1, 6 * k), Fraction(1, 12 * k)]


def _extd_partition(args: tuple) -> dict:
    k, p, sizes, samples, seed = args
    g = GroupSpec.cyclic(p)
    tally = Tally()
    candidates = [interval(g, 1, n) for n in sizes if 3 * (2 * n - 1) <= 2 * (p + 1)]
    for index in range(samples):
        rng = np.random.default_rng([seed, k, p, index])
        size = int(rng.integers(2, max(sizes) + 1))
        candidates.append(random_set(g, size, int(rng.integers(2 ** 31))))
    for A in candidates:
        for delta in extd_deltas(k):
            tally.add(theorem_extD_check(A, k, delta, describe_unmet=False))
    return tally.as_dict()


def _extd_met_partition(args: tuple) -> dict:
    k, p, n, delta = args
    tally = Tally()
    tally.add(theorem_extD_check(interval(GroupSpec.cyclic(p), 1, n), k, delta))
    return tally.as_dict()


def extd_sweep(ks: Sequence[int] = (3, 4), primes: Sequence[int] = (61, 101),
               sizes: Sequence[int] = tuple(range(2, 21)), samples: int = 20, seed: int = 0,
               jobs: Optional[int] = None) -> CheckReport:
    """Small intervals and random sets, plus the EXTD_MET_INTERVALS whose k is swept"""
    partitions = [(k, p, tuple(sizes), samples, seed) for k in ks for p in primes]
    results = run_partitions('extd-sweep', _extd_partition, partitions, jobs)
    met = [instance for instance in EXTD_MET_INTERVALS if instance[0] in ks]
    results += run_partitions('extd-sweep', _extd_met_partition, met, jobs)
    return aggregate('extd-sweep', results, {
        'ks': list(ks), 'primes': list(primes), 'sizes': list(sizes), 'samples': samples, 'seed': seed,
    }, {'met_intervals': [{'k': k, 'p': p, 'n': n, 'delta': delta} for k, p, n, delta in met]})


def chain_instance(seed: int, index: int):
    rng = np.random.default_rng([seed, index])
    p = CHAIN_PRIMES[int(rng.integers(len(CHAIN_PRIMES)))]
    size = int(rng.integers(2, min(8, p) + 1))
    k = int(rng.integers(1, 4))
    return random_set(GroupSpec.cyclic(p), size, int(rng.integers(2 ** 31))), k


def _chain_partition(args: tuple) -> dict:
    seed, start, stop = args
    tally = Tally()
    for index in range(start, stop):
        A, k = chain_instance(seed, index)
        tally.add(check_basic_chain(A, k))
    return tally.as_dict()


def _index_chunks(count: int, seed: int, chunk: int) -> List[tuple]:
    return [(seed, start, min(start + chunk, count)) for start in range(0, count, chunk)]


def chain_sweep(count: int = 1000, seed: int = 0, jobs: Optional[int] = None) -> CheckReport:
    results = run_partitions('chain-sweep', _chain_partition, _index_chunks(count, seed, 50), jobs)
    return aggregate('chain-sweep', results, {'count': count, 'seed': seed})


def fan_instance(seed: int, index: int) -> StepFunction:
    rng = np.random.default_rng([seed, index])
    cells = int(rng.integers(2, 17))
    min_value = FAN_LOW_SPREAD_MIN if index % 2 else 0
    return random_step_function(cells, int(rng.integers(2 ** 31)), min_value=min_value)


def admissible_deltas(f: StepFunction) -> List[Fraction]:
    limit = delta_limit(norms(f).rho_squared)
    return [limit] + [delta for delta in FAN_DELTAS if delta < limit]


def _fan_partition(args: tuple) -> dict:
    seed, start, stop = args
    tally = Tally()
    for index in range(start, stop):
        f = fan_instance(seed, index)
        for delta in admissible_deltas(f):
            tally.add(theorem_fan_check(f, delta))
            tally.add(omega_k_report(f, delta))
    return tally.as_dict()


def fan_sweep(count: int = 1000, seed: int = 0, jobs: Optional[int] = None) -> CheckReport:
    results = run_partitions('fan-sweep', _fan_partition, _index_chunks(count, seed, 100), jobs)
    return aggregate('fan-sweep', results, {'count': count, 'seed': seed})


# Identity sweeps

def _commutation_partition(args: tuple) -> dict:
    seed, start, stop, p = args
    g = GroupSpec.cyclic(p)
    tally = Tally()
    for index in range(start, stop):
        rng = np.random.default_rng([seed, index])
        A = random_set(g, int(rng.integers(2, 13)), int(rng.integers(2 ** 31)))
        for k in (2, 3, 4):
            for l in (2, 3, 4):
                tally.add(energy_commutation_check(A, k, l))
    return tally.as_dict()


def energy_commutation_sweep(count: int = 100, p: int = 31, seed: int = 0,
                             jobs: Optional[int] = None) -> CheckReport:
    partitions = [chunk + (p,) for chunk in _index_chunks(count, seed, 10)]
    results = run_partitions('energy-commutation-sweep', _commutation_partition, partitions, jobs)
    return aggregate('energy-commutation-sweep', results, {'count': count, 'p': p, 'seed': seed})


def id_ax_instance(seed: int, index: int):
    rng = np.random.default_rng([seed, index])
    p = (5, 7, 11, 13)[int(rng.integers(4))]
    g = GroupSpec.cyclic(p)
    A = random_set(g, int(rng.integers(1, p + 1)), int(rng.integers(2 ** 31)))
    half = random_set(g, int(rng.integers(0, p + 1)), int(rng.integers(2 ** 31)))
    D = GSet(g, half.bits | half.negate().bits | 1)
    return A, D, int(rng.integers(1, 4))


def _id_ax_partition(args: tuple) -> dict:
    seed, start, stop = args
    tally = Tally()
    for index in range(start, stop):
        tally.add(verify_id_ax(*id_ax_instance(seed, index)))
    return tally.as_dict()


def id_ax_sweep(count: int = 100, seed: int = 0, jobs: Optional[int] = None) -> CheckReport:
    results = run_partitions('id-ax-sweep', _id_ax_partition, _index_chunks(count, seed, 10), jobs)
    return aggregate('id-ax-sweep', results, {'count': count, 'seed': seed})


def _tightness_partition(args: tuple) -> dict:
    start, stop = args
    tally = Tally()
    for n in range(start, stop):
        tally.add(tightness_check(n))
    return tally.as_dict()


def tightness_sweep(n_min: int = 10, n_max: int = 200, jobs: Optional[int] = None) -> CheckReport:
    partitions = [(start, min(start + 20, n_max + 1)) for start in range(n_min, n_max + 1, 20)]
    results = run_partitions('tightness-sweep', _tightness_partition, partitions, jobs)
    return aggregate('tightness-sweep', results, {'n_min': n_min, 'n_max': n_max})


SWEEPS = {
    'intopt-sweep': exhaustive_intopt,
    'majorization-sweep': exhaustive_majorization,
    'convexity-sweep': exhaustive_convexity,
    'corollary-sweep': corollary_sweep,
    'dense-bound-sweep': dense_bound_sweep,
    'closed-form-sweep': closed_form_sweep,
    'modp-sweep': modp_sweep,
    'extd-sweep': extd_sweep,
    'chain-sweep': chain_sweep,
    'fan-sweep': fan_sweep,
    'energy-commutation-sweep': energy_commutation_sweep,
    'id-ax-sweep': id_ax_sweep,
    'tightness-sweep': tightness_sweep,
}
