"""
Single-instance checkers. Each returns a CheckReport; the exhaustive and
sampled drivers in sweeps.py aggregate them.

Exact comparisons are used wherever both sides are rational. Bounds with a
logarithm or a fractional power are compared in floating point through
guarded_verdict.
"""
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from group_core.exceptions import Degenerate, GroupMismatch, HypothesisViolated, NotSymmetric
from group_core.services import (INTEGER_WINDOW, GroupSpec, GSet, interval, is_prime,
                                 is_symmetric_with_zero, rearrange)
from repfn.services import diff_set, mu_k_witness, mu_witness, support_size_higher
from energy_tcount.services import (VIA_RK, VIA_RL, TupleCounter, additive_energy,
                                    corollary_bound, dense_bound, dense_tau, dense_tau_limit,
                                    energy_kl, t_interval_closed_form)

from .reports import (HOLDS, VACUOUS, VIOLATED, CheckReport, exact_verdict, finish,
                      guarded_verdict, make_instance, unmet)

logger = logging.getLogger(__name__)


def require_prime_cyclic(g: GroupSpec, minimum: int = 2):
    if not g.is_prime_cyclic or g.order < minimum:
        raise HypothesisViolated(f"needs a cyclic group of prime order >= {minimum}, got {g.describe()}")


def require_symmetric(D: GSet):
    if not is_symmetric_with_zero(D):
        raise NotSymmetric(f"{D!r} must satisfy 0 in D = -D")


def next_prime_above(n: int) -> int:
    candidate = n + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


def log_factor(delta: Fraction, scale: int = 2, inner: Fraction = None) -> float:
    """1 - scale * delta * ln(inner), the loss factor shared by the theorem bounds"""
    inner = 2 / delta if inner is None else inner
    return 1 - scale * float(delta) * math.log(inner)


# Rearrangement

def verify_intopt(A: GSet, D: GSet, k: int,
                  counter: Optional[TupleCounter] = None,
                  bar_counter: Optional[TupleCounter] = None) -> CheckReport:
    """T_D^(k)(A) <= T_{D-bar}^(k)(A-bar)"""
    require_prime_cyclic(A.group, minimum=5)
    require_symmetric(D)
    if A.is_empty:
        raise Degenerate("rearrangement check needs a nonempty A")

    D_bar = rearrange(D)
    A_bar = rearrange(A)
    lhs = (counter or TupleCounter(D)).count(A, k)
    rhs = (bar_counter or TupleCounter(D_bar)).count(A_bar, k)
    return finish(CheckReport(
        name='intopt',
        hypotheses_met=True,
        lhs=lhs,
        rhs=rhs,
        verdict=exact_verdict(lhs, rhs, '<='),
        instance=make_instance('intopt', A=A, D=D, k=k),
    ))


def interval_sequence(p: int, k: int, ds: Sequence[int]) -> List[int]:
    """R_{J_n}^(k)(d_1..d_{k-1}) for J_n = [1, n] and n = 1..p-1"""
    g = GroupSpec.cyclic(p)
    values = []
    for n in range(1, p):
        J = interval(g, 1, n).bits
        running = J
        for d in ds:
            running &= g.shift_bits(J, d)
        values.append(running.bit_count())
    return values


def second_differences(values: Sequence[int]) -> List[int]:
    return [values[i + 1] - 2 * values[i] + values[i - 1] for i in range(1, len(values) - 1)]


def convexity_check(p: int, k: int, ds: Sequence[int]) -> CheckReport:
    if p < 3 or k < 2:
        raise Degenerate(f"convexity check needs p >= 3 and k >= 2, got p={p}, k={k}")
    ds = tuple(int(d) % p for d in ds)
    if len(ds) != k - 1:
        raise Degenerate(f"expected {k - 1} shifts, got {len(ds)}")

    values = interval_sequence(p, k, ds)
    seconds = second_differences(values)
    worst = min(seconds, default=0)
    witness = None
    if worst < 0:
        witness = {'n': seconds.index(worst) + 2}
    return finish(CheckReport(
        name='convexity',
        hypotheses_met=True,
        lhs=worst,
        rhs=0,
        relation='>=',
        verdict=exact_verdict(worst, 0, '>='),
        witness=witness,
        details={'sequence': values},
        instance=make_instance('convexity', p=p, k=k, ds=list(ds)),
    ))


def slice_sizes(A: GSet, D: GSet) -> List[int]:
    """|A ∩ (D + a)| for a in A, largest first"""
    g = A.group
    return sorted(((A.bits & g.shift_bits(D.bits, a)).bit_count() for a in A), reverse=True)


def majorization_check(A: GSet, D: GSet) -> CheckReport:
    require_prime_cyclic(A.group)
    require_symmetric(D)
    if A.is_empty:
        raise Degenerate("majorization check needs a nonempty A")

    ours = slice_sizes(A, D)
    theirs = slice_sizes(rearrange(A), rearrange(D))
    ours_sum = theirs_sum = 0
    witness = None
    for h, (x, y) in enumerate(zip(ours, theirs), start=1):
        ours_sum += x
        theirs_sum += y
        if ours_sum > theirs_sum:
            witness = {'h': h}
            break
    return finish(CheckReport(
        name='majorization',
        hypotheses_met=True,
        lhs=ours_sum,
        rhs=theirs_sum,
        verdict=VIOLATED if witness else HOLDS,
        witness=witness,
        details={'sequence': ours, 'rearranged_sequence': theirs},
        instance=make_instance('majorization', A=A, D=D),
    ))


# Chain of inequalities and energy identities

def check_basic_chain(A: GSet, k: int) -> CheckReport:
    """
    |A|^(2k+2) <= |supp R^(k+1)| E_{k+1}(A) <= T_D^(k)(D) E_{k+1}(A)
               <= T_D^(k)(D) (|A|^(k+1) + mu(A)^k |A|^2),   D = A - A
    """
    if k < 1:
        raise Degenerate(f"chain needs k >= 1, got {k}")
    size = len(A)
    mu_value, _ = mu_witness(A)
    D = diff_set(A)

    mass_squared = size ** (2 * k + 2)
    support = support_size_higher(A, k + 1)
    energy = additive_energy(A, k + 1)
    t_value = TupleCounter(D).count(D, k)
    energy_bound = size ** (k + 1) + mu_value ** k * size ** 2

    links = {
        'cauchy_schwarz': mass_squared <= support * energy,
        'support_bound': support <= t_value,
        'energy_bound': energy <= energy_bound,
    }
    broken = [name for name, ok in links.items() if not ok]
    return finish(CheckReport(
        name='chain',
        hypotheses_met=True,
        lhs=mass_squared,
        rhs=t_value * energy_bound,
        verdict=VIOLATED if broken else HOLDS,
        witness={'broken_links': broken} if broken else None,
        details={
            'mass_squared': mass_squared,
            'support': support,
            'energy': energy,
            't_count': t_value,
            'mu': mu_value,
            'energy_bound': energy_bound,
            'middle': support * energy,
            'links': links,
        },
        instance=make_instance('chain', A=A, k=k),
    ))


def energy_commutation_check(A: GSet, k: int, l: int) -> CheckReport:
    via_rk = energy_kl(A, k, l, VIA_RK).value
    via_rl = energy_kl(A, k, l, VIA_RL).value
    return finish(CheckReport(
        name='energy-commutation',
        hypotheses_met=True,
        lhs=via_rk,
        rhs=via_rl,
        relation='=',
        verdict=exact_verdict(via_rk, via_rl, '='),
        details={'k': k, 'l': l},
        instance=make_instance('energy-commutation', A=A, k=k, l=l),
    ))


def energy_mu_bound_check(A: GSet, k: int) -> CheckReport:
    """E_k(A) <= |A|^k + mu(A)^(k-1) |A|^2"""
    if k < 2:
        raise Degenerate(f"energy bound needs k >= 2, got {k}")
    energy = additive_energy(A, k)
    mu_value, d = mu_witness(A)
    bound = len(A) ** k + mu_value ** (k - 1) * len(A) ** 2
    return finish(CheckReport(
        name='energy-mu',
        hypotheses_met=True,
        lhs=energy,
        rhs=bound,
        verdict=exact_verdict(energy, bound, '<='),
        witness=d,
        details={'mu': mu_value},
        instance=make_instance('energy-mu', A=A, k=k),
    ))


def cauchy_davenport_check(A: GSet) -> CheckReport:
    require_prime_cyclic(A.group)
    p = A.group.order
    size_d = len(diff_set(A))
    bound = min(p, 2 * len(A) - 1)
    return finish(CheckReport(
        name='cauchy-davenport',
        hypotheses_met=True,
        lhs=size_d,
        rhs=bound,
        relation='>=',
        verdict=exact_verdict(size_d, bound, '>='),
        instance=make_instance('cauchy-davenport', A=A),
    ))


# Tuple-count bounds

def interval_closed_form_check(m: int, k: int, p: Optional[int] = None) -> CheckReport:
    """T_D^(k)(D) = (m+1)^(k+1) - m^(k+1) for D = [-m, m] in C_p, 3m < p"""
    p = p or next_prime_above(3 * (2 * m + 1))
    instance = make_instance('closed-form', m=m, k=k, p=p)
    if not is_prime(p) or p < 5 or 3 * m >= p:
        return unmet('closed-form', {'p': p, 'm': m}, instance)
    D = interval(GroupSpec.cyclic(p), -m, m)
    measured = TupleCounter(D).count(D, k)
    formula = t_interval_closed_form(m, k)
    return finish(CheckReport(
        name='closed-form',
        hypotheses_met=True,
        lhs=measured,
        rhs=formula,
        relation='=',
        verdict=exact_verdict(measured, formula, '='),
        details={'p': p, 'm': m, 'k': k},
        instance=instance,
    ))


def corollary_check(D: GSet, k: int, counter: Optional[TupleCounter] = None) -> CheckReport:
    """T_D^(k)(D) <= 3k 2^(-k-1) |D|^k for k <= |D| <= 2(p+1)/3"""
    require_symmetric(D)
    instance = make_instance('corollary', D=D, k=k)
    g = D.group
    size_d = len(D)
    if not (g.is_prime_cyclic and g.order >= 5 and 3 <= k <= size_d
            and 3 * size_d <= 2 * (g.order + 1)):
        return unmet('corollary', {'size': size_d, 'k': k, 'group': g.describe()}, instance)
    measured = (counter or TupleCounter(D)).count(D, k)
    bound = corollary_bound(size_d, k)
    return finish(CheckReport(
        name='corollary',
        hypotheses_met=True,
        lhs=measured,
        rhs=bound,
        verdict=exact_verdict(measured, bound, '<='),
        details={'size': size_d, 'k': k},
        instance=instance,
    ))


def dense_bound_check(D: GSet, k: int, counter: Optional[TupleCounter] = None) -> CheckReport:
    """T_D^(k)(D) <= (1 - k(k-1)tau/4) |D|^k with tau = |G \\ D| / |D|"""
    require_symmetric(D)
    instance = make_instance('dense-bound', D=D, k=k)
    tau = dense_tau(D)
    if k < 1 or not 0 < tau <= dense_tau_limit(max(k, 1)):
        return unmet('dense-bound', {'tau': tau, 'k': k}, instance)
    measured = (counter or TupleCounter(D)).count(D, k)
    bound = dense_bound(len(D), tau, k)
    return finish(CheckReport(
        name='dense-bound',
        hypotheses_met=True,
        lhs=measured,
        rhs=bound,
        verdict=exact_verdict(measured, bound, '<='),
        details={'tau': tau, 'k': k, 'size': len(D)},
        instance=instance,
    ))


# Theorem-level checkers

def _doubling_gate(A: GSet, delta: Fraction) -> Tuple[Fraction, bool, int]:
    """K = |A-A|/|A| and whether K < |A|^delta, decided exactly"""
    size_d = len(diff_set(A))
    K = Fraction(size_d, len(A))
    a, b = delta.numerator, delta.denominator
    return K, K ** b < Fraction(len(A)) ** a, size_d


def _delta(delta, upper: Fraction) -> Fraction:
    delta = Fraction(delta)
    if not 0 < delta < upper:
        raise HypothesisViolated(f"delta = {delta} outside (0, {upper})")
    return delta


def _mu_lower_bound(name: str, A: GSet, K: Fraction, factor: float, details: dict,
                    instance: dict) -> CheckReport:
    """mu(A) > 2 K^-1 |A| factor"""
    mu_value, d = mu_witness(A)
    bound = 2 * float(len(A) / K) * factor
    verdict = VACUOUS if factor <= 0 else guarded_verdict(mu_value, bound, '>')
    return finish(CheckReport(
        name=name,
        hypotheses_met=True,
        lhs=mu_value,
        rhs=bound,
        relation='>',
        verdict=verdict,
        witness=d,
        details={**details, 'factor': factor},
        instance=instance,
    ))


def theorem_modp_check(A: GSet, delta) -> CheckReport:
    require_prime_cyclic(A.group)
    delta = _delta(delta, Fraction(1, 3))
    instance = make_instance('modp', A=A, delta=delta)
    if A.is_empty:
        raise Degenerate("theorem needs a nonempty A")

    p = A.group.order
    K, small_doubling, size_d = _doubling_gate(A, delta)
    details = {'K': K, 'size': len(A), 'difference_size': size_d, 'p': p}
    if not (small_doubling and 3 * size_d <= 2 * (p + 1)):
        return unmet('modp', details, instance)
    return _mu_lower_bound('modp', A, K, log_factor(delta), details, instance)


def theorem_intverD_check(A: GSet, delta) -> CheckReport:
    if A.group.kind != INTEGER_WINDOW:
        raise GroupMismatch(f"integer version needs an integer window, got {A.group.describe()}")
    delta = _delta(delta, Fraction(1, 3))
    instance = make_instance('intverd', A=A, delta=delta)
    if A.is_empty:
        raise Degenerate("theorem needs a nonempty A")

    K, small_doubling, size_d = _doubling_gate(A, delta)
    details = {'K': K, 'size': len(A), 'difference_size': size_d}
    if not small_doubling:
        return unmet('intverd', details, instance)
    return _mu_lower_bound('intverd', A, K, log_factor(delta), details, instance)


def theorem_intverL_check(A: GSet, length: int, delta) -> CheckReport:
    """mu(A) > (|A|^2 / L)(1 - 2 delta ln(2/delta)) for A in [1, L] with |A-A| < |A|^(1+delta)"""
    if A.group.kind != INTEGER_WINDOW:
        raise GroupMismatch(f"integer version needs an integer window, got {A.group.describe()}")
    delta = _delta(delta, Fraction(1, 3))
    instance = make_instance('intverl', A=A, length=length, delta=delta)
    if A.is_empty:
        raise Degenerate("theorem needs a nonempty A")
    if length <= 1 or min(A) < 1 or max(A) > length:
        raise HypothesisViolated(f"A must lie in [1, {length}] with L > 1")

    size, size_d = len(A), len(diff_set(A))
    a, b = delta.numerator, delta.denominator
    details = {'size': size, 'difference_size': size_d, 'length': length}
    if not size_d ** b < size ** (a + b):
        return unmet('intverl', details, instance)

    factor = log_factor(delta)
    mu_value, d = mu_witness(A)
    bound = size ** 2 / length * factor
    return finish(CheckReport(
        name='intverl',
        hypotheses_met=True,
        lhs=mu_value,
        rhs=bound,
        relation='>',
        verdict=VACUOUS if factor <= 0 else guarded_verdict(mu_value, bound, '>'),
        witness=d,
        details={**details, 'factor': factor},
        instance=instance,
    ))


def theorem_extD_check(A: GSet, k: int, delta, describe_unmet: bool = True) -> CheckReport:
    """
    Some distinct nonzero d_1..d_{k-1} have
    R^(k) > 2^(k-1) K^-(k-1) |A| (1 - 3 delta k^2 ln(1/(k delta))).

    With describe_unmet, mu^(k)(A) is reported even when the hypotheses fail.
    """
    require_prime_cyclic(A.group)
    if k < 3:
        raise HypothesisViolated(f"needs k >= 3, got {k}")
    delta = _delta(delta, Fraction(1, 3 * k))
    instance = make_instance('extd', A=A, k=k, delta=delta)
    if A.is_empty:
        raise Degenerate("theorem needs a nonempty A")

    p = A.group.order
    K, small_doubling, size_d = _doubling_gate(A, delta)
    details = {'K': K, 'size': len(A), 'difference_size': size_d, 'p': p, 'k': k}
    if not (small_doubling and 3 * size_d <= 2 * (p + 1)):
        if describe_unmet:
            details['mu_k'], details['mu_k_witness'] = mu_k_witness(A, k)
        return unmet('extd', details, instance)

    factor = log_factor(delta, scale=3 * k * k, inner=1 / (k * delta))
    value, witness = mu_k_witness(A, k)
    bound = 2 ** (k - 1) * float(K) ** (-(k - 1)) * len(A) * factor
    return finish(CheckReport(
        name='extd',
        hypotheses_met=True,
        lhs=value,
        rhs=bound,
        relation='>',
        verdict=VACUOUS if factor <= 0 else guarded_verdict(value, bound, '>'),
        witness=witness,
        details={**details, 'factor': factor},
        instance=instance,
    ))


def theorem_arbG_check(A: GSet) -> CheckReport:
    """mu(A) >= (|A|^2/|A-A|)(1 + sqrt(eps)/8) when |A-A| = (1-eps)|G|"""
    g = A.group
    if not g.is_finite:
        raise GroupMismatch(f"needs a finite group, got {g.describe()}")
    instance = make_instance('arbg', A=A)
    if A.is_empty:
        raise Degenerate("theorem needs a nonempty A")

    size, size_d = len(A), len(diff_set(A))
    epsilon = 1 - Fraction(size_d, g.size)
    details = {'size': size, 'difference_size': size_d, 'epsilon': epsilon}
    if size < 2 ** 10 or not 0 < epsilon <= Fraction(1, 32):
        return unmet('arbg', details, instance)
    root = math.sqrt(epsilon)
    exponent_gate = guarded_verdict(size_d, size ** (1 + root / 2), '<=')
    if exponent_gate != HOLDS:
        # a borderline doubling gate is treated as not met
        details['doubling_gate'] = exponent_gate
        return unmet('arbg', details, instance)

    mu_value, d = mu_witness(A)
    bound = size ** 2 / size_d * (1 + root / 8)
    return finish(CheckReport(
        name='arbg',
        hypotheses_met=True,
        lhs=mu_value,
        rhs=bound,
        relation='>=',
        verdict=guarded_verdict(mu_value, bound, '>='),
        witness=d,
        details=details,
        instance=instance,
    ))


def tightness_check(n: int, p: Optional[int] = None) -> CheckReport:
    """
    For A = [1, n] in C_p (p > 4n), mu(A) / (2|A|^2/|A-A|) equals
    (n-1)(2n-1)/(2n^2) and lies in [1 - 2/n, 1].
    """
    if n < 2:
        raise Degenerate(f"needs n >= 2, got {n}")
    p = p or next_prime_above(4 * n)
    A = interval(GroupSpec.cyclic(p), 1, n)
    mu_value, d = mu_witness(A)
    ratio = Fraction(mu_value * len(diff_set(A)), 2 * n * n)
    formula = Fraction((n - 1) * (2 * n - 1), 2 * n * n)
    in_window = 1 - Fraction(2, n) <= ratio <= 1
    return finish(CheckReport(
        name='tightness',
        hypotheses_met=True,
        lhs=ratio,
        rhs=formula,
        relation='=',
        verdict=HOLDS if ratio == formula and in_window else VIOLATED,
        witness=d,
        details={'n': n, 'p': p, 'mu': mu_value, 'in_window': in_window},
        instance=make_instance('tightness', n=n, p=p),
    ))

