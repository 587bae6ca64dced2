"""Exception types raised by the library."""


class HardyError(Exception):
    """Base class for all errors raised by ginihardy."""


class NoSignChange(HardyError, ValueError):
    pass


class MaxIterations(HardyError, RuntimeError):
    pass


class NonFinite(HardyError, ArithmeticError):
    pass


class NoConvergence(HardyError, RuntimeError):
    pass


class DomainError(HardyError, ValueError):
    """Parameters outside the region where an operation is defined."""


class SignConditionViolated(HardyError, ValueError):
    pass


class Inconsistent(HardyError, RuntimeError):
    """No self-consistent index found; indicates a bug, not bad input."""


class NotIntegrable(HardyError, ValueError):
    pass


class InvalidSpec(HardyError, ValueError):
    pass
