"""Exception hierarchy shared by all stirmode modules."""


class StirmodeError(Exception):
    """Base class for every error raised by this package."""


class SizeLimitError(StirmodeError, ValueError):
    """An argument falls outside the supported size range."""


class DomainError(StirmodeError, ValueError):
    """An argument lies outside a function's mathematical domain."""


class ContractError(StirmodeError, ValueError):
    """Input violates a structural precondition (e.g. log-concavity)."""


class PrecisionCapError(StirmodeError, ArithmeticError):
    """Interval refinement hit its precision cap without deciding."""


class TheoremViolation(StirmodeError, AssertionError):
    """A proved statement failed on a concrete input.

    ``witness`` carries whatever data reproduces the failure.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = dict(witness or {})
