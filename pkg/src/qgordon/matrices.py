"""k x k matrices over Laurent polynomials: A_(j), B_(j) = A_(j)^-1 and h^(j).

Rows and columns are 1-based in every public accessor and report.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .engine import GordonSequence, generate_sequence
from .errors import NegativeExponentResidue, ParamOutOfRange
from .report import CheckReport, Mismatch, compare
from .series import LaurentPolynomial, TruncatedSeries

Q = LaurentPolynomial.monomial
ZERO = LaurentPolynomial()
ONE = LaurentPolynomial.constant(1)


class SeriesMatrix:
    """Square matrix of :class:`LaurentPolynomial` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[LaurentPolynomial | int]]):
        rows = tuple(
            tuple(LaurentPolynomial.constant(x) if isinstance(x, int) else x for x in row)
            for row in rows
        )
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and nonempty")
        self.rows = rows

    @classmethod
    def identity(cls, k: int) -> SeriesMatrix:
        return cls([[ONE if r == c else ZERO for c in range(k)] for r in range(k)])

    @property
    def k(self) -> int:
        return len(self.rows)

    def entry(self, r: int, l: int) -> LaurentPolynomial:
        return self.rows[r - 1][l - 1]

    def row(self, r: int) -> tuple[LaurentPolynomial, ...]:
        return self.rows[r - 1]

    def entries(self):
        for r, row in enumerate(self.rows, 1):
            for l, e in enumerate(row, 1):
                yield r, l, e

    def __matmul__(self, other: SeriesMatrix) -> SeriesMatrix:
        return matrix_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SeriesMatrix({[[str(e) for e in r] for r in self.rows]!r})"

    def __str__(self) -> str:
        return render_matrix(self)


def render_matrix(m: SeriesMatrix) -> str:
    cells = [[str(e) for e in row] for row in m.rows]
    widths = [max(len(cells[r][c]) for r in range(m.k)) for c in range(m.k)]
    return "\n".join(
        "[ " + "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + " ]" for row in cells
    )


def _check(k: int, j: int, jmin: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ParamOutOfRange(f"k must be >= 2, got {k!r}")
    if not isinstance(j, int) or j < jmin:
        raise ParamOutOfRange(f"j must be >= {jmin}, got {j!r}")


def a_matrix(k: int, j: int) -> SeriesMatrix:
    """Row r, column l holds ``q^{(l-1)j}`` when ``r + l <= k + 1``, else 0."""
    _check(k, j, 1)
    return SeriesMatrix(
        [[Q((l - 1) * j) if r + l <= k + 1 else ZERO for l in range(1, k + 1)] for r in range(1, k + 1)]
    )


def b_matrix(k: int, j: int) -> SeriesMatrix:
    """Closed-form inverse of :func:`a_matrix`."""
    _check(k, j, 1)
    rows = [[ZERO] * k for _ in range(k)]
    rows[0][k - 1] = ONE
    for r in range(2, k + 1):
        rows[r - 1][k - r] = Q(-(r - 1) * j)
        rows[r - 1][k - r + 1] = Q(-(r - 1) * j, -1)
    return SeriesMatrix(rows)


def matrix_mul(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    if a.k != b.k:
        raise ValueError(f"dimension mismatch {a.k} vs {b.k}")
    k = a.k
    out = []
    for r in range(k):
        row = []
        for c in range(k):
            acc = ZERO
            for t in range(k):
                x, y = a.rows[r][t], b.rows[t][c]
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return SeriesMatrix(out)


def matrix_apply(a: SeriesMatrix, v: Sequence[TruncatedSeries], N: int) -> tuple[TruncatedSeries, ...]:
    """``a @ v`` for a column of series, capped at precision ``N``.

    Negative exponents are allowed in ``a`` as long as each row's total has
    no surviving term below ``q^0``.  A row term ``c q^e * v_l`` is known
    through ``q^{e + prec(v_l)}``, so the row precision is the minimum of
    those bounds.
    """
    if len(v) != a.k:
        raise ValueError(f"vector length {len(v)} != dimension {a.k}")
    out = []
    for r, row in enumerate(a.rows, 1):
        terms = [(e, c, s) for e_poly, s in zip(row, v) for e, c in e_poly.terms()]
        if not terms:
            out.append(TruncatedSeries.zero(N))
            continue
        lo = min(0, min(e for e, _, _ in terms))
        top = min([N] + [e + s.precision for e, _, s in terms])
        if top < 0:
            raise ValueError(f"row {r}: no coefficients are known after applying the matrix")
        acc = [0] * (top - lo + 1)
        for e, c, s in terms:
            for d in range(top - e + 1):
                x = s.coeffs[d]
                if x:
                    acc[d + e - lo] += c * x
        for d in range(-lo):
            if acc[d]:
                raise NegativeExponentResidue(d + lo, acc[d], f"row {r}: nonzero coefficient {acc[d]} at q^{d + lo}")
        out.append(TruncatedSeries(acc[-lo:], top))
    return tuple(out)


# ---------------------------------------------------------------------------
# h^(j), two ways


@lru_cache(maxsize=512)
def _h_by_product(k: int, j: int) -> SeriesMatrix:
    if j == 0:
        return SeriesMatrix.identity(k)
    return matrix_mul(_h_by_product(k, j - 1), a_matrix(k, j))


@lru_cache(maxsize=512)
def _h_by_recursion(k: int, j: int) -> SeriesMatrix:
    if j == 0:
        return SeriesMatrix.identity(k)
    prev = _h_by_recursion(k, j - 1)
    rows = []
    for row in prev.rows:
        # h_l = (h'_1 + ... + h'_{k-l+1}) q^{(l-1)j}
        partial = [ZERO]
        for x in row:
            partial.append(partial[-1] + x)
        rows.append([partial[k - l + 1].shift((l - 1) * j) for l in range(1, k + 1)])
    return SeriesMatrix(rows)


def h_matrix(k: int, j: int, method: str = "product") -> SeriesMatrix:
    """``h^(j) = A_(1) ... A_(j)``; ``method="recursion"`` uses the entry recursion instead."""
    _check(k, j, 0)
    if method == "product":
        return _h_by_product(k, j)
    if method == "recursion":
        return _h_by_recursion(k, j)
    raise ValueError(f"unknown method {method!r}")


def h_paths_check(k: int, j: int) -> CheckReport:
    """Both constructions of ``h^(j)`` agree and have nonnegative polynomial entries."""
    a, b = h_matrix(k, j, "product"), h_matrix(k, j, "recursion")
    for r, l, e in a.entries():
        if e != b.entry(r, l):
            return CheckReport(False, reason=f"entry ({r},{l}): {e} != {b.entry(r, l)}")
        if e.offset < 0 or any(c < 0 for c in e.coeffs):
            return CheckReport(False, reason=f"entry ({r},{l}) = {e} is not a nonnegative polynomial")
    return CheckReport(True)


def verify_inverse(k: int, j: int, b: SeriesMatrix | None = None) -> CheckReport:
    """Exact check ``A_(j) B_(j) = B_(j) A_(j) = I``."""
    a = a_matrix(k, j)
    if b is None:
        b = b_matrix(k, j)
    ident = SeriesMatrix.identity(k)
    for name, prod in (("A*B", a @ b), ("B*A", b @ a)):
        for r, l, e in prod.entries():
            if e != ident.entry(r, l):
                return CheckReport(False, reason=f"{name} entry ({r},{l}) is {e}")
    return CheckReport(True)


def _compare_vectors(lhs, rhs, label: str) -> CheckReport:
    for r, (x, y) in enumerate(zip(lhs, rhs), 1):
        rep = compare(x, y, label=f"{label} row {r}")
        if not rep:
            return rep
    return CheckReport(True, precision=min(min(x.precision, y.precision) for x, y in zip(lhs, rhs)))


def _apply_checked(m: SeriesMatrix, v, N: int, label: str):
    try:
        return matrix_apply(m, v, N), None
    except NegativeExponentResidue as exc:
        return None, CheckReport(False, Mismatch(exc.exponent, exc.coefficient, 0), f"{label}: {exc}")


def step_check(k: int, j: int, N: int, sequence: GordonSequence | None = None) -> CheckReport:
    """``G_(j) = B_(j) G_(j-1)`` and ``A_(j) G_(j) = G_(j-1)`` to shared precision."""
    _check(k, j, 1)
    if sequence is None:
        sequence = generate_sequence(k, j, N, strict=False)
    prev, cur = sequence.vector(j - 1), sequence.vector(j)
    got, bad = _apply_checked(b_matrix(k, j), prev, N, "B-form")
    if bad is not None:
        return bad
    rep = _compare_vectors(got, cur, "B-form")
    if not rep:
        return rep
    got, bad = _apply_checked(a_matrix(k, j), cur, N, "A-form")
    if bad is not None:
        return bad
    return _compare_vectors(got, prev, "A-form")


def expand_G(k: int, j: int, N: int, sequence: GordonSequence | None = None) -> CheckReport:
    """``G_(0) = h^(j) G_(j)`` to shared precision."""
    _check(k, j, 0)
    if sequence is None:
        sequence = generate_sequence(k, j, N, strict=False)
    got = matrix_apply(h_matrix(k, j), sequence.vector(j), N)
    return _compare_vectors(got, sequence.vector(0), "h-expansion")
