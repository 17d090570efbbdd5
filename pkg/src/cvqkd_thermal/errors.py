"""Exception hierarchy shared by every module of the package."""


class CVQKDError(Exception):
    """Base class for all errors raised by cvqkd_thermal."""


class InvalidParameterError(CVQKDError, ValueError):
    """An input is non-finite or outside its allowed range."""


class DomainError(CVQKDError, ValueError):
    """A function was evaluated outside its mathematical domain."""


class NumericError(CVQKDError, ArithmeticError):
    """A computation produced an unphysical or inconsistent result."""


class UnphysicalStateError(NumericError):
    """A covariance matrix violates the uncertainty principle."""
