"""Exception hierarchy shared by every module of the package."""


class RadiusLabError(Exception):
    """Base class for all package errors."""


class NotHermitian(RadiusLabError, ValueError):
    pass


class NotPSD(RadiusLabError, ValueError):
    pass


class ConvergenceFailure(RadiusLabError, ArithmeticError):
    pass


class DegenerateInput(RadiusLabError, ValueError):
    """An operation needs a nonzero matrix (or a nonzero denominator)."""


class DimensionMismatch(RadiusLabError, ValueError):
    pass


class DimensionTooLarge(RadiusLabError, ValueError):
    pass


class NotInvertible(RadiusLabError, ValueError):
    pass


class WeightError(RadiusLabError, ValueError):
    pass


class BadExponent(RadiusLabError, ValueError):
    pass


class OperandError(RadiusLabError, ValueError):
    pass


class SpecError(RadiusLabError, ValueError):
    pass


class ParseError(RadiusLabError, ValueError):
    pass


class ConfigError(RadiusLabError, ValueError):
    pass


class NotApplicable(RadiusLabError):
    """Raised when a bound's hypotheses fail; ``reason`` is machine readable."""

    def __init__(self, reason: str, message: str = ""):
        super().__init__(message or reason)
        self.reason = reason
