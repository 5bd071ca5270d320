"""Exception types shared across the library."""


class FramelabError(Exception):
    """Base class for all framelab errors."""


class NotHermitian(FramelabError):
    pass


class NoConvergence(FramelabError):
    pass


class SingularOperator(FramelabError):
    pass


class DimensionMismatch(FramelabError):
    pass


class LengthMismatch(FramelabError):
    pass


class ShapeMismatch(FramelabError):
    pass


class NotAFrame(FramelabError):
    pass


class NotADualPair(FramelabError):
    pass


class Ch2Violated(FramelabError):
    pass


class BadShape(FramelabError):
    pass


class BadLattice(FramelabError):
    pass


class JitterOnNonGabor(FramelabError):
    pass


class TheoremContradiction(FramelabError):
    """A certificate hypothesis held but the perturbed system is not a frame.

    This contradicts the underlying stability theorem and therefore signals
    an implementation bug; it is never caught and converted into a report.
    """
