"""Exception types shared across the package."""


class FdsrankError(Exception):
    """Base class for all package errors."""


class SizeLimitExceeded(FdsrankError):
    """An exact computation was refused because it exceeds a configured guard.

    The ``projected`` attribute carries the size that triggered the refusal
    (function count, state count, vertex count, ... depending on the guard).
    """

    def __init__(self, message, projected=None):
        super().__init__(message)
        self.projected = projected


class GraphFormatError(FdsrankError):
    """A graph or system text file could not be parsed.

    ``line`` is the 1-based line number of the offending input line.
    """

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class LoopsPresent(FdsrankError):
    """Operation requires a loopless digraph."""


class NotStronglyConnected(FdsrankError):
    """Operation requires a strongly connected digraph."""


class ShapeMismatch(FdsrankError):
    """System definition has inconsistent dimensions or invalid vertex ids."""


class ValueOutOfRange(FdsrankError):
    """A table entry or state coordinate lies outside the alphabet."""


class AlphabetTooSmall(FdsrankError):
    """Construction needs a larger alphabet than the one supplied."""


class EvenN(FdsrankError):
    """Construction is defined for odd satellite counts only."""


class BadPacking(FdsrankError):
    """Supplied cycle family is not a disjoint cover of the vertex set."""


class InconsistentBounds(FdsrankError):
    """A computed lower bound exceeded a computed upper bound."""
