"""Exception types shared across the package."""


class RelFDError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RelFDError, ValueError):
    """An argument lies outside the domain of the requested operation."""

    def __init__(self, message: str, value: object = None):
        super().__init__(message)
        self.value = value


class ConvergenceError(RelFDError, ArithmeticError):
    """An iterative procedure stopped before reaching its tolerance.

    ``estimate`` holds the best value obtained and ``error`` its error bound,
    so callers can decide whether the partial result is still useful.
    """

    def __init__(self, message: str, estimate: float | None = None, error: float | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class UsageError(RelFDError, ValueError):
    """Invalid combination of options, e.g. a method that does not fit the order q."""
