"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Input has the wrong shape or dimensions do not match."""


class ValidationError(ValueError):
    """Input violates a structural tolerance (unitarity, density matrix, ...)."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class NumericalError(RuntimeError):
    """A numerical routine failed or produced out-of-tolerance output."""


class CapacityError(ValueError):
    """Requested dimension exceeds a documented cap."""
