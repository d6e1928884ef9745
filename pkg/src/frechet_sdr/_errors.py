"""Exception hierarchy shared by every module."""


class FrechetSDRError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(FrechetSDRError, ValueError):
    """Input data violates a documented invariant."""


class DimensionError(ValidationError):
    """Array shapes are incompatible."""


class DomainError(ValidationError):
    """A value lies outside the domain of the operation."""


class ParameterError(ValidationError):
    """A tuning parameter is out of range."""


class ConfigurationError(ValidationError):
    """Incompatible combination of options (e.g. metric vs response type)."""


class ParseError(ValidationError):
    """A text file could not be parsed."""


class DegenerateInputError(ValidationError):
    """Input carries no variation, so the statistic is undefined."""


class NumericalError(FrechetSDRError, ArithmeticError):
    """A numerical routine failed or produced an unusable result."""
