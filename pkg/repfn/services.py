"""
Representation functions: r_A, the higher functions R_A^(k), difference sets,
and the extremal statistics mu(A), mu^(k)(A).
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from django.conf import settings

from group_core.exceptions import CapExceeded, Degenerate, EmptySet, GroupMismatch
from group_core.services import INTEGER_WINDOW, PRODUCT, GroupSpec, GSet

logger = logging.getLogger(__name__)

DIRECT = 'direct'
FFT = 'fft'
AUTO = 'auto'


def enumeration_cap() -> int:
    return getattr(settings, 'DIFFREP_ENUMERATION_CAP', 2_000_000)


@dataclass(frozen=True)
class RepTable:
    """r_A as a dense array indexed by bit position of the difference"""

    group: GroupSpec
    counts: Tuple[int, ...]
    size: int

    def count(self, d: int) -> int:
        if not self.group.contains(d):
            return 0
        return self.counts[self.group.bit(d)]

    def items(self) -> Iterator[Tuple[int, int]]:
        """(element, count) over the support, in bit order"""
        element = self.group.element
        for i, c in enumerate(self.counts):
            if c:
                yield element(i), c

    def total(self) -> int:
        return sum(self.counts)

    def moment(self, k: int) -> int:
        return sum(c ** k for c in self.counts if c)

    def support(self) -> GSet:
        bits = 0
        for i, c in enumerate(self.counts):
            if c:
                bits |= 1 << i
        return GSet(self.group, bits)


@dataclass(frozen=True)
class SparseRepTable:
    """Support of R_A^(k): (k-1)-tuples of differences mapped to positive counts"""

    group: GroupSpec
    arity: int
    entries: Dict[Tuple[int, ...], int]

    def get(self, xs: Tuple[int, ...]) -> int:
        return self.entries.get(tuple(xs), 0)

    def __len__(self) -> int:
        return len(self.entries)

    def total_mass(self) -> int:
        return sum(self.entries.values())

    def moment(self, l: int) -> int:
        return sum(v ** l for v in self.entries.values())


def _require_nonempty(A: GSet):
    if A.is_empty:
        raise EmptySet(f"empty subset of {A.group.describe()}")


def diff_set(A: GSet) -> GSet:
    """A - A; integer windows raise WindowOverflow if a difference leaves [-W, W]"""
    _require_nonempty(A)
    bits = 0
    for a in A:
        bits |= A.translate(A.group.neg(a)).bits
    return GSet(A.group, bits)


def _rep_counts_direct(A: GSet) -> List[int]:
    g = A.group
    counts = [0] * g.size
    for d in diff_set(A):
        counts[g.bit(d)] = (A.bits & g.shift_bits(A.bits, d)).bit_count()
    return counts


def _rep_counts_fft(A: GSet) -> Optional[List[int]]:
    """Cyclic (or multi-dimensional cyclic) autocorrelation; None if rounding is unsafe"""
    g = A.group
    indicator = np.zeros(g.size, dtype=np.float64)
    indicator[list(A)] = 1.0
    if g.kind == PRODUCT:
        shaped = indicator.reshape(g.orders)
        spectrum = np.fft.rfftn(shaped)
        corr = np.fft.irfftn(spectrum * np.conj(spectrum), s=shaped.shape).reshape(-1)
    else:
        spectrum = np.fft.rfft(indicator)
        corr = np.fft.irfft(spectrum * np.conj(spectrum), n=g.size)

    rounded = np.rint(corr)
    if np.max(np.abs(corr - rounded)) >= 0.25:
        return None
    counts = [int(c) for c in rounded]
    if sum(counts) != A.cardinality ** 2 or counts[0] != A.cardinality:
        return None
    return counts


def rep_table(A: GSet, method: str = AUTO) -> RepTable:
    """counts(d) = |A ∩ (A + d)|"""
    _require_nonempty(A)
    g = A.group
    use_fft = method == FFT or (
        method == AUTO and g.kind != INTEGER_WINDOW
        and g.size >= getattr(settings, 'DIFFREP_FFT_MIN_ORDER', 512)
    )
    counts = None
    if use_fft:
        if g.kind == INTEGER_WINDOW:
            raise GroupMismatch("FFT autocorrelation wraps around; integer windows use direct counting")
        counts = _rep_counts_fft(A)
        if counts is None:
            logger.warning(f"FFT autocorrelation failed exact recovery on {g.describe()}, counting directly")
    if counts is None:
        counts = _rep_counts_direct(A)
    return RepTable(group=g, counts=tuple(counts), size=A.cardinality)


def mu_witness(A: GSet) -> Tuple[int, int]:
    """(mu(A), d) with d the first nonzero difference attaining it"""
    _require_nonempty(A)
    if A.cardinality < 2:
        raise Degenerate("mu needs |A| >= 2: a singleton has no nonzero difference")
    best, witness = 0, None
    for d, c in rep_table(A).items():
        if d != 0 and c > best:
            best, witness = c, d
    return best, witness


def mu(A: GSet) -> int:
    return mu_witness(A)[0]


class SupportWalker:
    """
    Depth-first enumeration of supp(R_A^(k)).

    Keeps the running intersection A ∩ (A + x_1) ∩ ... and prunes as soon as
    it is empty; every coordinate ranges over A - A.
    """

    def __init__(self, A: GSet, cap: Optional[int] = None):
        _require_nonempty(A)
        self.A = A
        self.group = A.group
        self.differences = diff_set(A).elements()
        self.translates = {d: self.group.shift_bits(A.bits, d) for d in self.differences}
        self.cap = enumeration_cap() if cap is None else cap
        self.visited = 0

    def _tick(self):
        self.visited += 1
        if self.visited > self.cap:
            raise CapExceeded(
                f"support enumeration over {self.group.describe()} passed {self.cap} nodes"
            )

    def walk(self, depth: int, distinct_nonzero: bool = False) -> Iterator[Tuple[Tuple[int, ...], int]]:
        prefix: List[int] = []

        def descend(running: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
            if len(prefix) == depth:
                yield tuple(prefix), running.bit_count()
                return
            for d in self.differences:
                if distinct_nonzero and (d == 0 or d in prefix):
                    continue
                self._tick()
                narrowed = running & self.translates[d]
                if narrowed:
                    prefix.append(d)
                    yield from descend(narrowed)
                    prefix.pop()

        yield from descend(self.A.bits)


def _check_arity(k: int):
    if k < 2:
        raise Degenerate(f"R_A^(k) needs k >= 2, got {k}")


def higher_rep(A: GSet, k: int) -> SparseRepTable:
    """supp(R_A^(k)) with values; total mass is |A|^k"""
    _check_arity(k)
    walker = SupportWalker(A)
    entries = dict(walker.walk(k - 1))
    logger.debug(f"R^({k}) support of size {len(entries)} after {walker.visited} nodes")
    return SparseRepTable(group=A.group, arity=k - 1, entries=entries)


def mu_k_witness(A: GSet, k: int) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """
    (mu^(k)(A), tuple): the largest R_A^(k) over tuples with pairwise distinct
    nonzero components. (0, None) when no such tuple is in the support.
    """
    _check_arity(k)
    best, witness = 0, None
    for xs, value in SupportWalker(A).walk(k - 1, distinct_nonzero=True):
        if value > best:
            best, witness = value, xs
    return best, witness


def mu_k(A: GSet, k: int) -> int:
    return mu_k_witness(A, k)[0]


def support_size_higher(A: GSet, k: int) -> int:
    _check_arity(k)
    return sum(1 for _ in SupportWalker(A).walk(k - 1))
