"""Exception types shared across the package."""


class GuardExceeded(Exception):
    """Raised when an input is larger than a brute-force routine is allowed to handle."""


class NonFiniteError(ArithmeticError):
    """Raised when an iterative method produces NaN or infinite values."""
