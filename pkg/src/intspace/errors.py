"""Exception hierarchy shared by every module."""


class IntSpaceError(Exception):
    """Base class for all errors raised by :mod:`intspace`."""


class DomainError(IntSpaceError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterError(DomainError):
    """A formula was asked for a term outside its region of validity."""


class ContractError(IntSpaceError, ValueError):
    """An input violates a structural precondition (e.g. unsorted data)."""


class ConvergenceError(IntSpaceError, ArithmeticError):
    """A series did not reach the requested tolerance within its term cap."""

    def __init__(self, message, partial=None, cap=None):
        super().__init__(message)
        self.partial = partial
        self.cap = cap


class QuadratureError(IntSpaceError, ArithmeticError):
    """Adaptive quadrature hit its subdivision limit."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class IngestionError(IntSpaceError, ValueError):
    """A data file could not be read or parsed."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
