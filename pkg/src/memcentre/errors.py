"""Exception types raised by memcentre."""


class MemcentreError(Exception):
    """Base class for all library errors."""


class DomainError(MemcentreError, ValueError):
    """An argument lies outside the domain of the function."""


class DegenerateSampleError(MemcentreError, ValueError):
    """The sample cannot support the requested computation (e.g. zero spread)."""


class QuadratureError(MemcentreError, ArithmeticError):
    """Adaptive quadrature failed to converge.

    The best estimate reached before giving up is kept on ``estimate``.
    """

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate
