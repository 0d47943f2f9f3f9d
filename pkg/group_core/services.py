"""
Group arithmetic and finite subsets for the diffrep apps.

Elements are canonical integers:
    cyclic(n)           residue in [0, n)
    integer_window(W)   signed offset in [-W, W]
    product(n1, ..., nr) mixed-radix index, last coordinate fastest

A GSet is an immutable bit-vector held in a Python int. Bit position equals
the element, except for integer windows where it is element + W.
"""
import logging
from dataclasses import dataclass, field
from math import isqrt, prod
from typing import Iterator, List, Sequence, Tuple, Union

from django.conf import settings

from .exceptions import (CapExceeded, GroupMismatch, InvalidGroup,
                         SizeOutOfRange, WindowOverflow)

logger = logging.getLogger(__name__)

CYCLIC = 'cyclic'
INTEGER_WINDOW = 'integer_window'
PRODUCT = 'product'

GROUP_KINDS = (
    (CYCLIC, 'Cyclic group of order n'),
    (INTEGER_WINDOW, 'Integers in [-W, W]'),
    (PRODUCT, 'Product of cyclic groups'),
)

ElementLike = Union[int, Tuple[int, ...]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for q in range(3, isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True


def iter_bits(bits: int) -> Iterator[int]:
    """Yield set bit positions in increasing order"""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class GroupSpec:
    """Ambient group: cyclic, bounded integer window, or product of cyclic groups"""

    kind: str
    order: int = 0
    halfwidth: int = 0
    orders: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == CYCLIC:
            if self.order < 1:
                raise InvalidGroup(f"cyclic order must be >= 1, got {self.order}")
        elif self.kind == INTEGER_WINDOW:
            if self.halfwidth < 1:
                raise InvalidGroup(f"window halfwidth must be >= 1, got {self.halfwidth}")
        elif self.kind == PRODUCT:
            object.__setattr__(self, 'orders', tuple(int(o) for o in self.orders))
            if not self.orders or any(o < 2 for o in self.orders):
                raise InvalidGroup(f"product orders must each be >= 2, got {self.orders}")
        else:
            raise InvalidGroup(f"unknown group kind: {self.kind}")

        max_carrier = getattr(settings, 'DIFFREP_DENSE_MAX_CARRIER', 2 ** 22)
        if self.size > max_carrier:
            raise SizeOutOfRange(f"carrier of {self.describe()} exceeds {max_carrier} elements")

    @classmethod
    def cyclic(cls, n: int) -> 'GroupSpec':
        return cls(kind=CYCLIC, order=int(n))

    @classmethod
    def integer_window(cls, halfwidth: int) -> 'GroupSpec':
        return cls(kind=INTEGER_WINDOW, halfwidth=int(halfwidth))

    @classmethod
    def product(cls, *orders: int) -> 'GroupSpec':
        return cls(kind=PRODUCT, orders=tuple(orders))

    @property
    def size(self) -> int:
        if self.kind == CYCLIC:
            return self.order
        if self.kind == INTEGER_WINDOW:
            return 2 * self.halfwidth + 1
        return prod(self.orders)

    @property
    def is_finite(self) -> bool:
        return self.kind != INTEGER_WINDOW

    @property
    def is_prime_cyclic(self) -> bool:
        return self.kind == CYCLIC and is_prime(self.order)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def describe(self) -> str:
        if self.kind == CYCLIC:
            return f"C_{self.order}"
        if self.kind == INTEGER_WINDOW:
            return f"Z[-{self.halfwidth},{self.halfwidth}]"
        return ' x '.join(f"C_{o}" for o in self.orders)

    def to_dict(self) -> dict:
        if self.kind == CYCLIC:
            return {'kind': CYCLIC, 'order': self.order}
        if self.kind == INTEGER_WINDOW:
            return {'kind': INTEGER_WINDOW, 'halfwidth': self.halfwidth}
        return {'kind': PRODUCT, 'orders': list(self.orders)}

    # Encoding

    def bit(self, e: int) -> int:
        return e + self.halfwidth if self.kind == INTEGER_WINDOW else e

    def element(self, bit: int) -> int:
        return bit - self.halfwidth if self.kind == INTEGER_WINDOW else bit

    def contains(self, e: int) -> bool:
        if self.kind == INTEGER_WINDOW:
            return -self.halfwidth <= e <= self.halfwidth
        return 0 <= e < self.size

    def coords(self, e: int) -> Tuple[int, ...]:
        digits = []
        for o in reversed(self.orders):
            e, digit = divmod(e, o)
            digits.append(digit)
        return tuple(reversed(digits))

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.orders):
            raise GroupMismatch(f"{tuple(coords)} has wrong arity for {self.describe()}")
        index = 0
        for c, o in zip(coords, self.orders):
            index = index * o + (c % o)
        return index

    def encode(self, value: ElementLike) -> int:
        """Turn user input (int, signed residue or coordinate tuple) into an element"""
        if self.kind == PRODUCT:
            if isinstance(value, (tuple, list)):
                if any(not 0 <= c < o for c, o in zip(value, self.orders)):
                    raise GroupMismatch(f"{tuple(value)} is not an element of {self.describe()}")
                return self.from_coords(value)
            if not 0 <= int(value) < self.size:
                raise GroupMismatch(f"{value} is not an element of {self.describe()}")
            return int(value)
        if isinstance(value, (tuple, list)):
            raise GroupMismatch(f"{self.describe()} elements are integers, got {value}")
        value = int(value)
        if self.kind == CYCLIC:
            if not -self.order < value < self.order:
                raise GroupMismatch(f"{value} is not an element of {self.describe()}")
            return value % self.order
        if not self.contains(value):
            raise WindowOverflow(f"{value} lies outside {self.describe()}")
        return value

    def decode(self, e: int) -> ElementLike:
        return self.coords(e) if self.kind == PRODUCT else e

    def signed(self, e: int) -> int:
        """Signed view of a cyclic residue, in [-((n-1)//2), n//2]"""
        if self.kind == CYCLIC and e > self.order // 2:
            return e - self.order
        return e

    def carrier(self) -> range:
        if self.kind == INTEGER_WINDOW:
            return range(-self.halfwidth, self.halfwidth + 1)
        return range(self.size)

    # Arithmetic

    def add(self, a: int, b: int) -> int:
        if self.kind == CYCLIC:
            return (a + b) % self.order
        if self.kind == INTEGER_WINDOW:
            total = a + b
            if not self.contains(total):
                raise WindowOverflow(f"{a} + {b} leaves {self.describe()}")
            return total
        return self.from_coords([x + y for x, y in zip(self.coords(a), self.coords(b))])

    def neg(self, a: int) -> int:
        if self.kind == CYCLIC:
            return (-a) % self.order
        if self.kind == INTEGER_WINDOW:
            return -a
        return self.from_coords([-x for x in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    # Bit-vector primitives

    def shift_bits(self, bits: int, d: int) -> int:
        """Bits of (S + d); for windows, elements leaving [-W, W] are dropped"""
        if self.kind == CYCLIC:
            n = self.order
            d %= n
            if d == 0:
                return bits
            return ((bits << d) | (bits >> (n - d))) & self.full_mask
        if self.kind == INTEGER_WINDOW:
            if d >= 0:
                return (bits << d) & self.full_mask
            return bits >> -d
        shifted = 0
        for i in iter_bits(bits):
            shifted |= 1 << self.add(i, d)
        return shifted

    def negate_bits(self, bits: int) -> int:
        if self.kind == PRODUCT:
            negated = 0
            for i in iter_bits(bits):
                negated |= 1 << self.neg(i)
            return negated
        size = self.size
        if size == 1:
            return bits
        reversed_bits = int(format(bits, f'0{size}b')[::-1], 2)
        if self.kind == INTEGER_WINDOW:
            return reversed_bits
        # bit i went to n-1-i; one more step lands on -i mod n
        return self.shift_bits(reversed_bits, 1)


@dataclass(frozen=True)
class GSet:
    """Finite subset of a group as a bit-vector"""

    group: GroupSpec
    bits: int
    cardinality: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.group.size:
            raise SizeOutOfRange(f"set has members outside {self.group.describe()}")
        object.__setattr__(self, 'cardinality', self.bits.bit_count())

    @classmethod
    def from_elements(cls, group: GroupSpec, elements) -> 'GSet':
        bits = 0
        for value in elements:
            bits |= 1 << group.bit(group.encode(value))
        return cls(group, bits)

    @classmethod
    def empty(cls, group: GroupSpec) -> 'GSet':
        return cls(group, 0)

    @classmethod
    def full(cls, group: GroupSpec) -> 'GSet':
        return cls(group, group.full_mask)

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        element = self.group.element
        for i in iter_bits(self.bits):
            yield element(i)

    def __contains__(self, e: int) -> bool:
        if not self.group.contains(e):
            return False
        return bool(self.bits >> self.group.bit(e) & 1)

    def __repr__(self) -> str:
        shown = [self.group.decode(e) for e in self]
        return f"GSet({self.group.describe()}, {shown})"

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def elements(self) -> List[int]:
        return list(self)

    def to_dict(self) -> dict:
        return {
            'group': self.group.to_dict(),
            'elements': [self.group.decode(e) for e in self],
        }

    def _same_group(self, other: 'GSet'):
        if self.group != other.group:
            raise GroupMismatch(f"{self.group.describe()} vs {other.group.describe()}")

    def intersect(self, other: 'GSet') -> 'GSet':
        self._same_group(other)
        return GSet(self.group, self.bits & other.bits)

    def translate(self, d: int) -> 'GSet':
        shifted = self.group.shift_bits(self.bits, d)
        if shifted.bit_count() != self.cardinality:
            raise WindowOverflow(f"{self!r} + {d} leaves {self.group.describe()}")
        return GSet(self.group, shifted)

    def negate(self) -> 'GSet':
        return GSet(self.group, self.group.negate_bits(self.bits))


def add(g: GroupSpec, a: ElementLike, b: ElementLike) -> int:
    return g.add(g.encode(a), g.encode(b))


def translate(A: GSet, d: ElementLike) -> GSet:
    return A.translate(A.group.encode(d))


def intersect(A: GSet, B: GSet) -> GSet:
    return A.intersect(B)


def interval(g: GroupSpec, a: int, b: int) -> GSet:
    """The interval [a, b]; cyclic intervals wrap modulo n"""
    if g.kind == PRODUCT:
        raise GroupMismatch(f"intervals are not defined in {g.describe()}")
    length = b - a + 1
    if not 1 <= length <= g.size:
        raise SizeOutOfRange(f"interval [{a}, {b}] does not fit {g.describe()}")
    block = (1 << length) - 1
    if g.kind == CYCLIC:
        return GSet(g, g.shift_bits(block, a))
    if not (g.contains(a) and g.contains(b)):
        raise WindowOverflow(f"interval [{a}, {b}] leaves {g.describe()}")
    return GSet(g, block << g.bit(a))


def centered_interval(g: GroupSpec, size: int) -> GSet:
    """[-(m-1), m] for size 2m and [-m, m] for size 2m+1"""
    if g.kind == PRODUCT:
        raise GroupMismatch(f"centered intervals are not defined in {g.describe()}")
    if not 1 <= size <= g.size:
        raise SizeOutOfRange(f"size {size} outside [1, {g.size}]")
    m, odd = divmod(size, 2)
    if odd:
        return interval(g, -m, m)
    return interval(g, -(m - 1), m)


def rearrange(S: GSet) -> GSet:
    """The centered interval of the same size"""
    return centered_interval(S.group, S.cardinality)


def is_symmetric_with_zero(D: GSet) -> bool:
    return 0 in D and D.negate() == D


def enumerate_symmetric_sets(g: GroupSpec) -> Iterator[GSet]:
    """Every D with 0 in D = -D, in binary-counting order over the classes {x, -x}"""
    if g.kind != CYCLIC:
        raise GroupMismatch(f"symmetric set enumeration needs a cyclic group, got {g.describe()}")
    cap = getattr(settings, 'DIFFREP_EXHAUSTIVE_ORDER_CAP', 31)
    if g.order > cap:
        raise CapExceeded(f"order {g.order} exceeds exhaustive cap {cap}")

    n = g.order
    classes = [(1 << x) | (1 << (n - x)) for x in range(1, (n - 1) // 2 + 1)]
    if n % 2 == 0:
        classes.append(1 << (n // 2))
    return _symmetric_sets(g, classes)


def _symmetric_sets(g: GroupSpec, classes: List[int]) -> Iterator[GSet]:
    for mask in range(1 << len(classes)):
        bits = 1
        for j, cls_bits in enumerate(classes):
            if mask >> j & 1:
                bits |= cls_bits
        yield GSet(g, bits)


def symmetric_set_count(g: GroupSpec) -> int:
    n = g.order
    return 2 ** ((n - 1) // 2) * (2 if n % 2 == 0 else 1)


def symmetric_subsets(g: GroupSpec) -> Iterator[GSet]:
    """Every D with 0 in D = -D in any finite group, one class {x, -x} at a time"""
    if not g.is_finite:
        raise GroupMismatch(f"symmetric subsets need a finite group, got {g.describe()}")
    cap = getattr(settings, 'DIFFREP_EXHAUSTIVE_ORDER_CAP', 31)
    if g.size > cap:
        raise CapExceeded(f"order {g.size} exceeds exhaustive cap {cap}")

    classes = []
    seen = 1
    for x in g.carrier():
        if seen >> x & 1:
            continue
        cls_bits = (1 << x) | (1 << g.neg(x))
        seen |= cls_bits
        classes.append(cls_bits)
    return _symmetric_sets(g, classes)
