"""Exception types raised across the package."""


class ShapeError(ValueError):
    """Operands have mismatched truncation orders."""


class StructureError(ValueError):
    """Declared matrix structure disagrees with the stored zero pattern."""


class ConvergenceError(RuntimeError):
    """An iterative method hit its iteration cap before meeting its tolerance."""

    def __init__(self, message, estimate=None, iterations=None):
        super().__init__(message)
        self.estimate = estimate
        self.iterations = iterations


class QuadratureError(RuntimeError):
    """A quadrature rule's doubling error estimate exceeds the requested tolerance."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class CancellationError(ArithmeticError):
    """An alternating sum lost too many digits to meet the requested tolerance."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound
