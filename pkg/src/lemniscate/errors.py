"""Exception types raised across the package."""


class LemniscateError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LemniscateError, ValueError):
    """Argument outside the domain of the function being evaluated."""


class ConvergenceError(LemniscateError, ArithmeticError):
    """An iteration failed to reach its tolerance.

    ``estimate`` carries the best value obtained before giving up.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class NotFoundError(LemniscateError, LookupError):
    """A search (e.g. for a sign change) found nothing."""
