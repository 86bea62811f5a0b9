"""Error types shared across the package."""


class CapacityError(RuntimeError):
    """A requested computation exceeds a configured size cap."""


class ConvergenceError(RuntimeError):
    """An iterative eigensolve did not reach the requested residual tolerance."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class AccuracyError(RuntimeError):
    """A quadrature did not converge to the requested accuracy."""
