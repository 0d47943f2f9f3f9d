"""
Higher energies E_{k,l}(A) and the tuple count T_D^(k)(A).

T_D^(k)(A) counts ordered k-tuples from A whose pairwise differences all
lie in D. With 0 in D this is the number of homomorphisms of the complete
graph K_k into the graph on A where x ~ y iff x - y and y - x are both in D
(loops included), and TupleCounter counts them by candidate-set recursion:

    f(C, 1) = |C|
    f(C, j) = sum over x in C of f(C ∩ (x + S), j - 1),   S = D ∩ (-D)

f only depends on C up to translation, so candidate sets are normalized
before memoization.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as tuples
from typing import Dict, Tuple

from group_core.exceptions import (CapExceeded, Degenerate, GroupMismatch, HypothesisViolated,
                                   NotSymmetric, WindowOverflow)
from group_core.services import CYCLIC, INTEGER_WINDOW, GSet, is_symmetric_with_zero, iter_bits
from repfn.services import SupportWalker, enumeration_cap, higher_rep, rep_table
from extremal_verify.reports import CheckReport, HOLDS, VIOLATED, finish, make_instance

logger = logging.getLogger(__name__)

VIA_RK = 'viaRk'
VIA_RL = 'viaRl'


@dataclass(frozen=True)
class EnergyValue:
    k: int
    l: int
    value: int
    side: str


@dataclass(frozen=True)
class TCount:
    k: int
    value: int


# Energies

def additive_energy(A: GSet, k: int = 2) -> int:
    """E_k(A) = sum over x of r_A(x)^k"""
    return rep_table(A).moment(k)


def energy_kl(A: GSet, k: int, l: int, side: str = VIA_RK) -> EnergyValue:
    if k < 2 or l < 2:
        raise Degenerate(f"E_(k,l) needs k, l >= 2, got ({k}, {l})")
    if side not in (VIA_RK, VIA_RL):
        raise ValueError(f"unknown energy side: {side}")

    arity, power = (k, l) if side == VIA_RK else (l, k)
    if arity == 2:
        value = rep_table(A).moment(power)
    else:
        value = higher_rep(A, arity).moment(power)
    return EnergyValue(k=k, l=l, value=value, side=side)


# Tuple counts

class TupleCounter:
    """
    Memoized T_D^(k) counts for a fixed D.

    One instance can serve many (A, k) pairs; the memo is keyed by the
    normalized candidate set and the remaining tuple length.
    """

    def __init__(self, D: GSet):
        self.D = D
        self.group = D.group
        self.has_zero = 0 in D
        self.neighbours = D.intersect(D.negate()).bits
        self.memo: Dict[Tuple[int, int], int] = {}
        self.neighbourhoods: Dict[int, int] = {}

    def _normalize(self, bits: int) -> int:
        if self.group.kind not in (CYCLIC, INTEGER_WINDOW):
            return bits
        return bits >> ((bits & -bits).bit_length() - 1)

    def _anchor(self, bits: int) -> int:
        """
        Rotate a cyclic set so that it starts right after its first gap.

        A run that wraps past 0 becomes one block at the bottom, so every
        candidate set below it stays unwrapped and the lowest-bit shift in
        _normalize maps translates of an arc to the same key.
        """
        if self.group.kind != CYCLIC:
            return bits
        gaps = ~bits & self.group.full_mask
        if not gaps or not bits & 1:
            return bits
        gap = (gaps & -gaps).bit_length() - 1
        rest = bits >> gap
        if not rest:
            return bits
        start = gap + (rest & -rest).bit_length() - 1
        return self.group.shift_bits(bits, -start)

    def _neighbourhood(self, bit: int) -> int:
        mask = self.neighbourhoods.get(bit)
        if mask is None:
            mask = self.group.shift_bits(self.neighbours, self.group.element(bit))
            self.neighbourhoods[bit] = mask
        return mask

    def _count(self, bits: int, j: int) -> int:
        if j == 1 or not bits:
            return bits.bit_count()
        bits = self._normalize(bits)
        key = (bits, j)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        neighbourhood = self._neighbourhood
        total = 0
        if j == 2:
            for i in iter_bits(bits):
                total += (bits & neighbourhood(i)).bit_count()
        else:
            for i in iter_bits(bits):
                total += self._count(bits & neighbourhood(i), j - 1)
        self.memo[key] = total
        return total

    def count(self, A: GSet, k: int) -> int:
        if A.group != self.group:
            raise GroupMismatch(f"{A.group.describe()} vs {self.group.describe()}")
        if k < 1:
            raise Degenerate(f"T^(k) needs k >= 1, got {k}")
        if not self.has_zero:
            return 0
        return self._count(self._anchor(A.bits), k)


def t_count(D: GSet, A: GSet, k: int, counter: TupleCounter = None) -> TCount:
    counter = counter or TupleCounter(D)
    value = counter.count(A, k)
    logger.debug(f"T^({k}) = {value} with {len(counter.memo)} memo entries")
    return TCount(k=k, value=value)


def _difference_in(D: GSet, x: int, y: int) -> bool:
    try:
        return D.group.sub(x, y) in D
    except WindowOverflow:
        return False


def t_count_naive(D: GSet, A: GSet, k: int) -> int:
    """Brute-force loop over A^k"""
    if A.group != D.group:
        raise GroupMismatch(f"{A.group.describe()} vs {D.group.describe()}")
    cap = enumeration_cap()
    if len(A) ** k > cap:
        raise CapExceeded(f"|A|^k = {len(A) ** k} exceeds {cap}")
    members = A.elements()
    return sum(
        1 for xs in tuples(members, repeat=k)
        if all(_difference_in(D, x, y) for x in xs for y in xs)
    )


def t_interval_closed_form(m: int, k: int) -> int:
    """T_D^(k)(D) for D = [-m, m] inside a cyclic group of order > 3m"""
    if m < 0 or k < 1:
        raise Degenerate(f"closed form needs m >= 0 and k >= 1, got m={m}, k={k}")
    return (m + 1) ** (k + 1) - m ** (k + 1)


def corollary_bound(size_d: int, k: int) -> Fraction:
    """3k 2^(-k-1) |D|^k"""
    if k < 3 or size_d < k:
        raise HypothesisViolated(f"bound needs 3 <= k <= |D|, got k={k}, |D|={size_d}")
    return Fraction(3 * k * size_d ** k, 2 ** (k + 1))


def dense_tau_limit(k: int) -> Fraction:
    return min(Fraction(1, 2), Fraction(2, k * k - k + 2))


def dense_bound(size_d: int, tau: Fraction, k: int) -> Fraction:
    """(1 - k(k-1)tau/4) |D|^k for 0 < tau <= min{1/2, 2/(k^2-k+2)}"""
    tau = Fraction(tau)
    if k < 1:
        raise HypothesisViolated(f"bound needs k >= 1, got {k}")
    if not 0 < tau <= dense_tau_limit(k):
        raise HypothesisViolated(f"tau = {tau} outside (0, {dense_tau_limit(k)}] for k={k}")
    return (1 - Fraction(k * (k - 1), 4) * tau) * size_d ** k


def dense_tau(D: GSet) -> Fraction:
    """|G \\ D| / |D|"""
    if not D.group.is_finite:
        raise GroupMismatch(f"tau needs a finite group, got {D.group.describe()}")
    if D.is_empty:
        raise Degenerate("tau of the empty set")
    return Fraction(D.group.size - len(D), len(D))


# Identities

def _ax1_sum(A: GSet, D: GSet, k: int) -> int:
    """Sum of R_A^(k+1)(d_1..d_k) over d_i in D with d_i - d_j in D"""
    total = 0
    for ds, value in SupportWalker(A).walk(k):
        if all(d in D for d in ds) and all(
            _difference_in(D, x, y) for x in ds for y in ds
        ):
            total += value
    return total


def verify_id_ax(A: GSet, D: GSet, k: int) -> CheckReport:
    """T_D^(k+1)(A) three ways: directly, through R_A^(k+1), and by slicing at a in A"""
    if not is_symmetric_with_zero(D):
        raise NotSymmetric(f"{D!r} must satisfy 0 in D = -D")
    if k < 1:
        raise Degenerate(f"identity needs k >= 1, got {k}")

    counter = TupleCounter(D)
    direct = counter.count(A, k + 1)
    ax1 = _ax1_sum(A, D, k)
    ax2 = 0
    for a in A:
        slice_bits = A.bits & A.group.shift_bits(D.bits, a)
        ax2 += counter.count(GSet(A.group, slice_bits), k)

    agree = direct == ax1 == ax2
    return finish(CheckReport(
        name='id-ax',
        hypotheses_met=True,
        lhs=direct,
        rhs=ax1,
        relation='=',
        verdict=HOLDS if agree else VIOLATED,
        details={'direct': direct, 'ax1': ax1, 'ax2': ax2, 'k': k},
        instance=make_instance('id-ax', A=A, D=D, k=k),
    ))
