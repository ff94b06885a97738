"""Exception types shared across the package."""


class HierqError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(HierqError, ValueError):
    """An input violates a documented precondition or invariant."""


class NumericalError(HierqError, ArithmeticError):
    """A computation produced values outside its numerical contract."""


class ConvergenceError(HierqError, RuntimeError):
    """Iterative fitting failed to reach the requested tolerance.

    Carries the residual at termination so callers can report how far
    from convergence the iteration stopped.
    """

    def __init__(self, message, *, residual, iterations, order=None, alpha=None):
        super().__init__(message)
        self.residual = float(residual)
        self.iterations = int(iterations)
        self.order = order
        self.alpha = alpha
