"""Pass/fail results with a localized witness."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PrecisionError
from .series import TruncatedSeries


@dataclass(frozen=True)
class Mismatch:
    """First disagreement between two computations."""

    exponent: int
    lhs: int
    rhs: int

    def as_dict(self) -> dict:
        return {"exponent": self.exponent, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    witness: Mismatch | None = None
    reason: str = ""
    precision: int | None = None

    def __bool__(self) -> bool:
        return self.passed


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries, upto: int | None = None) -> Mismatch | None:
    """Lowest exponent where ``a`` and ``b`` differ, checking through ``q^upto``.

    ``upto`` defaults to the shared precision; asking for more is an error.
    """
    shared = min(a.precision, b.precision)
    if upto is None:
        upto = shared
    elif upto > shared:
        raise PrecisionError(f"cannot compare through q^{upto}; shared precision is {shared}")
    for d in range(upto + 1):
        x, y = a.coeffs[d], b.coeffs[d]
        if x != y:
            return Mismatch(d, x, y)
    return None


def compare(a: TruncatedSeries, b: TruncatedSeries, upto: int | None = None, label: str = "") -> CheckReport:
    w = first_mismatch(a, b, upto)
    n = min(a.precision, b.precision) if upto is None else upto
    if w is None:
        return CheckReport(True, precision=n)
    reason = f"{label}: " if label else ""
    return CheckReport(False, w, f"{reason}differ at q^{w.exponent}: {w.lhs} != {w.rhs}", precision=n)
