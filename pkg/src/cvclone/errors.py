"""Exception types shared across the package."""


class DomainError(ValueError):
    """Raised when an argument lies outside its mathematical domain."""


class NumericalError(ArithmeticError):
    """Raised when a linear-algebra step is too ill-conditioned to trust."""
