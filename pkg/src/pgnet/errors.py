"""Exception types shared across the package."""


class PgnetError(Exception):
    """Base class for all package-specific errors."""


class ParamError(PgnetError, ValueError):
    """Invalid model parameters or function arguments."""


class GraphError(PgnetError, ValueError):
    """Structural violation: loops, unknown nodes, bad multiplicities."""


class GraphFormatError(GraphError):
    """Malformed graph file. Carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EstimationError(PgnetError, ValueError):
    """Estimator cannot be evaluated on the given data."""


class EmptyTailError(EstimationError):
    """No observations at or above k_min."""


class DegenerateTailError(EstimationError):
    """All tail observations sit exactly at k_min; the ML slope diverges."""


class NumericError(PgnetError, ArithmeticError):
    """Numeric failure: no stable root, overflow, or mass leak."""


class ChainInitError(PgnetError, RuntimeError):
    """MCMC starting state has zero posterior probability."""
