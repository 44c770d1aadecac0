"""Exception types shared across the package."""


class KsigraphError(Exception):
    """Base class for all ksigraph errors."""


class ParseError(KsigraphError):
    """Malformed input data (edge lists, value files)."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DomainError(KsigraphError):
    """A request outside an operation's valid domain.

    Covers invalid model parameters, size limits of exact algorithms,
    non-convergence of iterative solvers, and out-of-range inversion
    targets.
    """


class ConvergenceError(DomainError):
    """An iterative solver failed to converge within its budget."""


class CalibrationError(DomainError):
    """Sampled calibration data violates the monotonicity contract."""
