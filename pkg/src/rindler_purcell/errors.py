"""Exception types shared across the package.

The split mirrors the CLI exit-code contract: configuration problems are
``ValueError`` subclasses (exit code 1), numerical failures derive from
``NumericalError`` (exit code 2), and I/O problems surface as ``OSError``
(exit code 3).
"""

__all__ = [
    "DomainError",
    "PoleError",
    "NumericalError",
    "PrecisionLossError",
    "ConvergenceError",
    "BracketingError",
    "QuadratureError",
    "TruncationWarning",
]


class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class PoleError(DomainError):
    """The gamma function was evaluated at a non-positive integer."""


class NumericalError(RuntimeError):
    """Base class for runtime numerical failures."""


class PrecisionLossError(NumericalError):
    """A series evaluation lost too many digits to cancellation.

    Carries the measured peak-to-sum amplification ``loss`` and the
    implied ``estimated_error`` so callers can decide on a fallback.
    """

    def __init__(self, message, *, loss=None, estimated_error=None):
        super().__init__(message)
        self.loss = loss
        self.estimated_error = estimated_error


class ConvergenceError(NumericalError):
    """An iteration failed to converge within its budget."""


class BracketingError(NumericalError):
    """A root scan failed to bracket the requested zero.

    Carries the scanned window so callers can report what was searched.
    """

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class QuadratureError(NumericalError):
    """Adaptive quadrature hit its subdivision cap before converging."""


class TruncationWarning(UserWarning):
    """A truncated mode sum did not meet its tail tolerance."""
