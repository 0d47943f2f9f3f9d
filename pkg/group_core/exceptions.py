"""
Error hierarchy shared by every diffrep app.

All of them derive from ValueError so callers that only care about bad input
can catch one thing; the CLI maps them to exit code 1.
"""


class DiffrepError(ValueError):
    """Base class for all diffrep errors"""


class InvalidGroup(DiffrepError):
    """Group parameters out of range"""


class GroupMismatch(DiffrepError):
    """Operands live in different groups, or the group kind is unsupported"""


class WindowOverflow(DiffrepError):
    """An integer-window operation left [-W, W]"""


class SizeOutOfRange(DiffrepError):
    """A requested size does not fit the carrier"""


class CapExceeded(DiffrepError):
    """An enumeration would exceed the configured cap"""


class EmptySet(DiffrepError):
    """Operation needs a nonempty set"""


class Degenerate(DiffrepError):
    """Statistic undefined for this input (e.g. mu of a singleton)"""


class HypothesisViolated(DiffrepError):
    """A checker or bound was called outside its stated hypotheses"""


class NotSymmetric(HypothesisViolated):
    """D must satisfy 0 in D = -D"""


class ZeroFunction(DiffrepError):
    """Step function is identically zero"""
