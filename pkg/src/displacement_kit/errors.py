"""Exception types shared across the package."""


class DisplacementKitError(Exception):
    """Base class for all errors raised by displacement-kit."""


class ParameterError(DisplacementKitError, ValueError):
    """An argument is malformed: wrong type, wrong range, or mismatched dimensions."""


class ValidationError(DisplacementKitError, ValueError):
    """Input data failed a numerical certification check (message names the violated bound)."""


class NumericError(DisplacementKitError, ArithmeticError):
    """A numerical routine could not meet its accuracy contract."""
