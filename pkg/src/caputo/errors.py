"""Exception types raised across the package."""


class DomainError(ValueError):
    """Argument outside the domain where an operation is defined."""


class PoleError(DomainError):
    """Evaluation at a pole of the Gamma function (or a pFq lower parameter)."""


class SeriesConvergenceError(ArithmeticError):
    """A series hit its term budget before its stopping rule fired."""


class JetOrderError(ValueError):
    """Requested jet order exceeds the supported maximum."""


class ValidationError(ArithmeticError):
    """Two evaluation routes that must agree did not."""
