"""Exception types shared across the package."""

from __future__ import annotations


class QSeriesError(Exception):
    """Base class for every error raised by qgordon."""


class ParamOutOfRange(QSeriesError, ValueError):
    pass


class NonUnitConstantTerm(QSeriesError, ArithmeticError):
    pass


class NotDivisible(QSeriesError, ArithmeticError):
    """A claimed division by a power of q left a nonzero low-order coefficient.

    This is a verification failure, not a programming error: it means a
    divisibility statement does not hold for the data at hand.
    """

    def __init__(self, exponent: int, coefficient: int, message: str | None = None):
        self.exponent = exponent
        self.coefficient = coefficient
        super().__init__(message or f"nonzero coefficient {coefficient} at q^{exponent}")


class NegativeExponentResidue(NotDivisible):
    """Applying a Laurent matrix left a nonzero coefficient at a negative exponent."""


class PrecisionError(QSeriesError):
    """A coefficient beyond the known precision was requested."""


class PrecisionExhausted(PrecisionError):
    """Repeated division by powers of q used up the available precision."""


class InsufficientPrecision(PrecisionError):
    """The precision is too low to decide the requested property."""
