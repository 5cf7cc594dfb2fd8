"""Exception types raised by specnorm.

Every error raised on a contract violation derives from :class:`SpecnormError`,
so callers (and the CLI) can map the whole family to a single exit path.
"""


class SpecnormError(Exception):
    """Base class for all specnorm errors."""


class ZeroMatrixError(SpecnormError):
    """The operation is undefined for an all-zero matrix."""


class ZeroVectorError(SpecnormError):
    """The operation is undefined for an all-zero vector."""


class NonConvergenceError(SpecnormError):
    """Iterative solver failed to certify the result within max_iter.

    Carries the best iterate found so that callers can inspect it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NotHermitianError(SpecnormError):
    """A Hermitian matrix was required but A != A* entrywise."""


class NotRealError(SpecnormError):
    """A real vector or matrix was required but imaginary parts exceed tolerance."""


class CapExceededError(SpecnormError):
    """Problem dimension exceeds the enumeration cap for an exact oracle."""


class RankDeficientError(SpecnormError):
    """The second singular value is (numerically) zero where rank >= 2 is required."""


class ParseError(SpecnormError):
    """Malformed matrix or graph text input."""


class LoopRejectedError(ParseError):
    """Graph edge list contains a self-loop, which is not allowed."""


class EmptyGraphError(SpecnormError):
    """The graph has no edges, so spectral quantities degenerate."""


class EmptySubsetError(SpecnormError):
    """A vertex subset was empty where a nonempty subset is required."""


class OutOfRangeError(SpecnormError):
    """An argument lies outside the documented domain of the operation."""
