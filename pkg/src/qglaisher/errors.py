"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class QGlaisherError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(QGlaisherError, ZeroDivisionError):
    pass


class NonMonicDivisor(QGlaisherError, ValueError):
    pass


class InexactDivision(QGlaisherError, ArithmeticError):
    """No integer-coefficient quotient exists.

    ``remainder`` holds the offending remainder (an ``IntPoly``).
    """

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class InvalidRange(QGlaisherError, ValueError):
    pass


class InvalidParameter(QGlaisherError, ValueError):
    pass


class NotPrime(QGlaisherError, ValueError):
    pass


class HypothesisViolated(QGlaisherError, ValueError):
    pass


class NonIntegralCoefficient(QGlaisherError, ArithmeticError):
    pass


class ResourceCap(QGlaisherError, RuntimeError):
    pass
