"""Exact truncated power series and Laurent polynomials over the integers.

Everything in the package computes in these two rings.  Coefficients are
Python ints, so there is no overflow; a :class:`TruncatedSeries` carries its
own precision ``N`` and coefficients above ``q^N`` are *unknown*, never zero.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    NonUnitConstantTerm,
    NotDivisible,
    ParamOutOfRange,
    PrecisionError,
    PrecisionExhausted,
)

# Below this many nonzero terms in the sparser operand, schoolbook wins.
_SPARSE_TERMS = 48


def _check_precision(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"precision must be a nonnegative integer, got {n!r}")


# ---------------------------------------------------------------------------
# multiplication kernels


def _schoolbook(a: Sequence[int], b: Sequence[int], length: int) -> list[int]:
    # Iterate over the nonzero terms of the sparser operand only.
    if sum(1 for c in a if c) > sum(1 for c in b if c):
        a, b = b, a
    out = [0] * length
    nb = len(b)
    for s, x in enumerate(a):
        if not x or s >= length:
            continue
        stop = min(nb, length - s)
        for t in range(stop):
            y = b[t]
            if y:
                out[s + t] += x * y
    return out


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    zero = bytes(nbytes)
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else zero for c in coeffs)
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else zero for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a: Sequence[int], b: Sequence[int], length: int) -> list[int]:
    """Product via Kronecker substitution into one big-integer multiply."""
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    # Each digit must hold the inputs and every product coefficient, signed.
    bound = max(ma, mb, ma * mb * min(len(a), len(b)))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    width = 8 * nbytes
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    # Two's complement modulo 2^(width*length) decodes into signed digits.
    raw = (prod & ((1 << (width * length)) - 1)).to_bytes(nbytes * length, "little")
    half = 1 << (width - 1)
    full = 1 << width
    out = []
    carry = 0
    for t in range(length):
        d = int.from_bytes(raw[t * nbytes:(t + 1) * nbytes], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        out.append(d)
    return out


def convolve(a: Sequence[int], b: Sequence[int], length: int | None = None) -> list[int]:
    """Exact integer convolution of two coefficient lists, truncated to ``length``."""
    if not a or not b:
        return [0] * (length or 0)
    full = len(a) + len(b) - 1
    length = full if length is None else min(length, full)
    if length <= 0:
        return []
    a = a[:length]
    b = b[:length]
    nnz_a = sum(1 for c in a if c)
    nnz_b = sum(1 for c in b if c)
    if nnz_a == 0 or nnz_b == 0:
        return [0] * length
    if min(nnz_a, nnz_b) <= _SPARSE_TERMS:
        return _schoolbook(a, b, length)
    return _kronecker(a, b, length)


# ---------------------------------------------------------------------------
# truncated series


class TruncatedSeries:
    """``c0 + c1 q + ... + cN q^N + O(q^(N+1))`` with exact integer coefficients.

    Instances are immutable.  ``coeffs`` is padded with zeros (or cut) to
    exactly ``precision + 1`` entries.
    """

    __slots__ = ("_coeffs", "_precision")

    def __init__(self, coeffs: Iterable[int], precision: int | None = None):
        cs = [int(c) for c in coeffs]
        if precision is None:
            if not cs:
                raise ValueError("cannot infer precision from an empty coefficient list")
            precision = len(cs) - 1
        _check_precision(precision)
        if len(cs) <= precision:
            cs.extend([0] * (precision + 1 - len(cs)))
        else:
            del cs[precision + 1:]
        self._coeffs = tuple(cs)
        self._precision = precision

    @classmethod
    def one(cls, precision: int) -> TruncatedSeries:
        return cls([1], precision)

    @classmethod
    def zero(cls, precision: int) -> TruncatedSeries:
        return cls([], precision)

    @classmethod
    def monomial(cls, exponent: int, precision: int, coefficient: int = 1) -> TruncatedSeries:
        if exponent < 0:
            raise ValueError("series monomials need a nonnegative exponent")
        cs = [0] * (precision + 1)
        if exponent <= precision:
            cs[exponent] = coefficient
        return cls(cs, precision)

    @classmethod
    def from_terms(cls, terms: dict[int, int], precision: int) -> TruncatedSeries:
        """Build from ``{exponent: coefficient}``; exponents above precision are dropped."""
        cs = [0] * (precision + 1)
        for e, c in terms.items():
            if e < 0:
                raise ValueError("series terms need nonnegative exponents")
            if e <= precision:
                cs[e] += c
        return cls(cs, precision)

    @property
    def precision(self) -> int:
        return self._precision

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def __getitem__(self, d: int) -> int:
        if d < 0:
            raise IndexError(f"negative exponent {d}")
        if d > self._precision:
            raise PrecisionError(f"coefficient of q^{d} is unknown at precision {self._precision}")
        return self._coeffs[d]

    def truncate(self, precision: int) -> TruncatedSeries:
        if precision > self._precision:
            raise PrecisionError(f"cannot raise precision {self._precision} to {precision}")
        return TruncatedSeries(self._coeffs[:precision + 1], precision)

    # arithmetic ------------------------------------------------------------

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_add(self, other)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_sub(self, other)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self._coeffs], self._precision)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries([c * other for c in self._coeffs], self._precision)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def invert(self) -> TruncatedSeries:
        return series_invert(self)

    def shift_divide(self, m: int) -> TruncatedSeries:
        return shift_divide(self, m)

    def order(self) -> int | None:
        return order_of(self)

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        # Equality is only meaningful up to the shared precision.
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self._precision, other._precision)
        return self._coeffs[:n + 1] == other._coeffs[:n + 1]

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self._coeffs)!r}, precision={self._precision})"

    def __str__(self) -> str:
        return render_series(self)


def render_series(a: TruncatedSeries) -> str:
    """Debug rendering ``1 - q^2 + 3*q^5 + O(q^N+1)``, terms sorted by exponent."""
    terms = []
    for d, c in enumerate(a.coeffs):
        if c:
            terms.append((c, _monomial_text(abs(c), d)))
    return _join_terms(terms + [(1, f"O(q^{a.precision + 1})")])


def _monomial_text(c: int, d: int) -> str:
    if d == 0:
        return str(c)
    var = "q" if d == 1 else f"q^{d}"
    return var if c == 1 else f"{c}*{var}"


def _join_terms(terms: list[tuple[int, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for n, (c, text) in enumerate(terms):
        if n == 0:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append(f" + {text}" if c > 0 else f" - {text}")
    return "".join(out)


# ---------------------------------------------------------------------------
# operations


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.precision, b.precision)
    return TruncatedSeries([x + y for x, y in zip(a.coeffs[:n + 1], b.coeffs[:n + 1])], n)


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.precision, b.precision)
    return TruncatedSeries([x - y for x, y in zip(a.coeffs[:n + 1], b.coeffs[:n + 1])], n)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller precision."""
    n = min(a.precision, b.precision)
    return TruncatedSeries(convolve(a.coeffs[:n + 1], b.coeffs[:n + 1], n + 1), n)


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series whose constant term is +1 or -1."""
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise NonUnitConstantTerm(f"constant term {c0} is not a unit in Z[[q]]")
    n = a.precision
    support = [(t, c) for t, c in enumerate(a.coeffs) if t and c]
    b = [0] * (n + 1)
    b[0] = c0
    for d in range(1, n + 1):
        acc = 0
        for t, c in support:
            if t > d:
                break
            acc += c * b[d - t]
        # 1/c0 == c0 for a unit.
        b[d] = -c0 * acc
    return TruncatedSeries(b, n)


def shift_divide(a: TruncatedSeries, m: int) -> TruncatedSeries:
    """Divide by ``q^m``; the low coefficients must vanish.

    Raises :class:`NotDivisible` if a known coefficient below ``q^m`` is
    nonzero, and :class:`PrecisionExhausted` if ``m`` exceeds the precision
    (after the known coefficients have been checked).
    """
    if m < 0:
        raise ValueError("shift must be nonnegative")
    for d in range(min(m, a.precision + 1)):
        if a.coeffs[d]:
            raise NotDivisible(d, a.coeffs[d])
    if m > a.precision:
        raise PrecisionExhausted(f"dividing by q^{m} exhausts precision {a.precision}")
    return TruncatedSeries(a.coeffs[m:], a.precision - m)


def order_of(a: TruncatedSeries) -> int | None:
    """Smallest exponent with a nonzero coefficient, or ``None`` if zero to precision."""
    for d, c in enumerate(a.coeffs):
        if c:
            return d
    return None


def one_minus_q_power(n: int, precision: int) -> TruncatedSeries:
    """``1 - q^n`` as a series, ``n >= 1``."""
    if n < 1:
        raise ValueError("need n >= 1")
    return TruncatedSeries.from_terms({0: 1, n: -1}, precision)


@lru_cache(maxsize=64)
def euler_product(precision: int) -> TruncatedSeries:
    """``prod_{n>=1} 1/(1 - q^n)`` to the given precision."""
    _check_precision(precision)
    acc = TruncatedSeries.one(precision)
    for n in range(1, precision + 1):
        acc = series_mul(acc, series_invert(one_minus_q_power(n, precision)))
    return acc


def check_gordon_params(k: int, i: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ParamOutOfRange(f"k must be an integer >= 2, got {k!r}")
    if not isinstance(i, int) or not 1 <= i <= k:
        raise ParamOutOfRange(f"i must satisfy 1 <= i <= k={k}, got {i!r}")


def excluded_residues(k: int, i: int) -> frozenset[int]:
    """Residues mod 2k+1 left out of the product for G_i: ``0, +-(k+1-i)``."""
    m = 2 * k + 1
    r = k + 1 - i
    return frozenset({0, r % m, (-r) % m})


@lru_cache(maxsize=256)
def restricted_euler_product(k: int, i: int, precision: int) -> TruncatedSeries:
    """``prod 1/(1 - q^n)`` over ``n <= N`` with ``n`` not in ``0, +-(k+1-i) mod 2k+1``."""
    check_gordon_params(k, i)
    _check_precision(precision)
    skip = excluded_residues(k, i)
    acc = TruncatedSeries.one(precision)
    for n in range(1, precision + 1):
        if n % (2 * k + 1) not in skip:
            acc = series_mul(acc, series_invert(one_minus_q_power(n, precision)))
    return acc


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPolynomial:
    """Finite ``sum c_e q^e`` with integer coefficients and possibly negative exponents.

    Stored canonically: ``coeffs[0]`` is the coefficient of ``q^offset`` and
    both ends are nonzero; the zero polynomial has no coefficients and offset 0.
    """

    __slots__ = ("_offset", "_coeffs")

    def __init__(self, coeffs: Iterable[int] = (), offset: int = 0):
        cs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and not cs[lo]:
            lo += 1
        hi = len(cs)
        while hi > lo and not cs[hi - 1]:
            hi -= 1
        if lo == hi:
            self._coeffs: tuple[int, ...] = ()
            self._offset = 0
        else:
            self._coeffs = tuple(cs[lo:hi])
            self._offset = offset + lo

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPolynomial:
        return cls([coefficient], exponent)

    @classmethod
    def constant(cls, c: int) -> LaurentPolynomial:
        return cls([c], 0)

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> LaurentPolynomial:
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        cs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            cs[e - lo] += c
        return cls(cs, lo)

    @property
    def offset(self) -> int:
        return self._offset

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int | None:
        return self._offset + len(self._coeffs) - 1 if self._coeffs else None

    def coefficient(self, exponent: int) -> int:
        d = exponent - self._offset
        return self._coeffs[d] if 0 <= d < len(self._coeffs) else 0

    def terms(self) -> list[tuple[int, int]]:
        return [(self._offset + d, c) for d, c in enumerate(self._coeffs) if c]

    def to_series(self, precision: int) -> TruncatedSeries:
        """Embed into ``Z[[q]]``; requires no negative exponents."""
        if self._coeffs and self._offset < 0:
            raise ValueError(f"{self} has negative exponents")
        return TruncatedSeries.from_terms(dict(self.terms()), precision)

    def shift(self, m: int) -> LaurentPolynomial:
        """Multiply by ``q^m``."""
        return LaurentPolynomial(self._coeffs, self._offset + m)

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        lo = min(self._offset, other._offset)
        hi = max(self.degree, other.degree)
        cs = [0] * (hi - lo + 1)
        for p in (self, other):
            base = p._offset - lo
            for d, c in enumerate(p._coeffs):
                cs[base + d] += c
        return LaurentPolynomial(cs, lo)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial([-c for c in self._coeffs], self._offset)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial.constant(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial([c * other for c in self._coeffs], self._offset)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return LaurentPolynomial()
        return LaurentPolynomial(convolve(self._coeffs, other._coeffs), self._offset + other._offset)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._offset == other._offset and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._offset, self._coeffs))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({list(self._coeffs)!r}, offset={self._offset})"

    def __str__(self) -> str:
        return _join_terms([(c, _monomial_text(abs(c), e)) for e, c in self.terms()])
