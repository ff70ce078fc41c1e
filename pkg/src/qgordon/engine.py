"""The series G_s: product sides, theta quotients, closed form and recursion.

Indexing follows ``s = (k-1) j + i`` with ``1 <= i <= k``.  The first block
``j = 0`` holds the products ``G_1 .. G_k``; every later block is obtained by

    G_{(k-1)j+i} = (G_{(k-1)(j-1)+k-i+1} - G_{(k-1)(j-1)+k-i+2}) / q^{(i-1)j}

for ``i = 2 .. k``, while ``G_{(k-1)j+1}`` is the last entry of block ``j-1``.
Each division by ``q^m`` costs ``m`` orders of precision, see
:func:`precision_loss`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from .errors import InsufficientPrecision, ParamOutOfRange, PrecisionExhausted
from .report import CheckReport, compare
from .series import (
    TruncatedSeries,
    check_gordon_params,
    euler_product,
    excluded_residues,
    one_minus_q_power,
    order_of,
    restricted_euler_product,
    series_mul,
    series_sub,
    shift_divide,
)


@dataclass(frozen=True)
class GordonIndex:
    """Position ``(j, i)`` in the G-sequence for modulus ``2k+1``."""

    k: int
    j: int
    i: int

    def __post_init__(self):
        check_gordon_params(self.k, self.i)
        if not isinstance(self.j, int) or self.j < 0:
            raise ParamOutOfRange(f"j must be >= 0, got {self.j!r}")

    @property
    def s(self) -> int:
        return (self.k - 1) * self.j + self.i

    @classmethod
    def from_linear(cls, k: int, s: int) -> GordonIndex:
        """Canonical ``(j, i)``: ``j = 0`` for ``s <= k``, otherwise ``i >= 2``."""
        if s < 1:
            raise ParamOutOfRange(f"s must be >= 1, got {s}")
        j = max(0, (s - 2) // (k - 1))
        return cls(k, j, s - (k - 1) * j)

    def canonical(self) -> GordonIndex:
        return GordonIndex.from_linear(self.k, self.s)

    @property
    def required_order(self) -> int:
        """Order that ``G_s - 1`` must reach: ``j+1``, or ``j+2`` when ``i = k``."""
        return self.j + 2 if self.i == self.k else self.j + 1


# ---------------------------------------------------------------------------
# the three closed expressions


def product_G(k: int, i: int, N: int) -> TruncatedSeries:
    """The product side ``G_i``."""
    return restricted_euler_product(k, i, N)


def _lambda_terms(base, N):
    lam = 0
    while base(lam) <= N:
        yield lam
        lam += 1


def theta_numerator(k: int, i: int, N: int) -> TruncatedSeries:
    """``1 + sum_{l>=1} (-1)^l q^{(2k+1)C(l,2) + (k-i+1)l} (1 + q^{(2i-1)l})``."""
    check_gordon_params(k, i)
    terms: dict[int, int] = {0: 1}

    def lead(lam):
        return (2 * k + 1) * lam * (lam - 1) // 2 + (k - i + 1) * lam

    for lam in _lambda_terms(lead, N):
        if lam == 0:
            continue
        sign = -1 if lam % 2 else 1
        e = lead(lam)
        terms[e] = terms.get(e, 0) + sign
        e2 = e + (2 * i - 1) * lam
        terms[e2] = terms.get(e2, 0) + sign
    return TruncatedSeries.from_terms(terms, N)


def alternating_numerator(k: int, i: int, N: int) -> TruncatedSeries:
    """``sum_{l>=0} (-1)^l q^{(2k+1)C(l,2) + (k+i)l} (1 - q^{(k-i+1)(2l+1)})``."""
    check_gordon_params(k, i)
    terms: dict[int, int] = {}

    def lead(lam):
        return (2 * k + 1) * lam * (lam - 1) // 2 + (k + i) * lam

    for lam in _lambda_terms(lead, N):
        sign = -1 if lam % 2 else 1
        e = lead(lam)
        terms[e] = terms.get(e, 0) + sign
        e2 = e + (k - i + 1) * (2 * lam + 1)
        terms[e2] = terms.get(e2, 0) - sign
    return TruncatedSeries.from_terms(terms, N)


def complementary_product(k: int, i: int, N: int) -> TruncatedSeries:
    """``prod (1 - q^n)`` over ``n <= N`` with ``n = 0, +-(k+1-i) mod 2k+1``, expanded directly."""
    check_gordon_params(k, i)
    keep = excluded_residues(k, i)
    acc = TruncatedSeries.one(N)
    for n in range(1, N + 1):
        if n % (2 * k + 1) in keep:
            acc = series_mul(acc, one_minus_q_power(n, N))
    return acc


def sum_form_G(k: int, i: int, N: int, variant: Literal["first", "second"] = "first") -> TruncatedSeries:
    """``G_i`` as a theta-type numerator over ``prod (1 - q^n)``."""
    if variant == "first":
        num = theta_numerator(k, i, N)
    elif variant == "second":
        num = alternating_numerator(k, i, N)
    else:
        raise ValueError(f"variant must be 'first' or 'second', got {variant!r}")
    return series_mul(num, euler_product(N))


def closed_form_numerator(k: int, j: int, i: int, N: int, linear: int | None = None) -> TruncatedSeries:
    """Numerator of the closed form for ``G_{(k-1)j+i}``.

    ``sum_{l>=0} (-1)^l q^{(2k+1)C(l,2) + [k(j+1)+i] l}
    (1-q^{l+1})...(1-q^{l+j}) (1 - q^{(k-i+1)(2l+j+1)})``.

    ``linear`` overrides the coefficient ``k(j+1)+i`` of ``l`` in the exponent.
    """
    check_gordon_params(k, i)
    if j < 0:
        raise ParamOutOfRange(f"j must be >= 0, got {j}")
    if linear is None:
        linear = k * (j + 1) + i

    def lead(lam):
        return (2 * k + 1) * lam * (lam - 1) // 2 + linear * lam

    acc = [0] * (N + 1)
    for lam in _lambda_terms(lead, N):
        e0 = lead(lam)
        room = N - e0
        # Expand q^{e0} * prod(1 - q^{lam+m}) * (1 - q^{tail}) on [0, room].
        poly = [0] * (room + 1)
        poly[0] = 1
        top = 0
        for step in [lam + m for m in range(1, j + 1)] + [(k - i + 1) * (2 * lam + j + 1)]:
            if step > room:
                continue
            top = min(room, top + step)
            for d in range(top, step - 1, -1):
                if poly[d - step]:
                    poly[d] -= poly[d - step]
        sign = -1 if lam % 2 else 1
        for d in range(top + 1):
            if poly[d]:
                acc[e0 + d] += sign * poly[d]
    return TruncatedSeries(acc, N)


@lru_cache(maxsize=4096)
def closed_form_H(k: int, j: int, i: int, N: int) -> TruncatedSeries:
    """``H_{(k-1)j+i}``: the closed-form numerator times ``prod 1/(1-q^n)``."""
    return series_mul(closed_form_numerator(k, j, i, N), euler_product(N))


# ---------------------------------------------------------------------------
# the recursion


def precision_loss(k: int, jmax: int) -> dict[tuple[int, int], int]:
    """Orders of precision lost by entry ``(j, i)`` when seeding at any N.

    Entry ``(j, i)`` of :func:`generate_sequence` has precision ``N - loss``;
    the recursion needs ``N >= max(loss)`` to reach depth ``jmax`` intact.
    """
    loss = {(0, i): 0 for i in range(1, k + 1)}
    for j in range(1, jmax + 1):
        loss[(j, 1)] = loss[(j - 1, k)]
        for i in range(2, k + 1):
            loss[(j, i)] = max(loss[(j - 1, k - i + 1)], loss[(j - 1, k - i + 2)]) + (i - 1) * j
    return loss


def seed_order(k: int, jmax: int, N: int) -> int:
    """Seed precision that leaves every entry through depth ``jmax`` at precision >= N."""
    return N + max(precision_loss(k, jmax).values())


class GordonSequence:
    """Blocks ``G_(0), G_(1), ...`` of the recursion; block boundaries are shared.

    ``blocks[j][i-1]`` holds ``G_{(k-1)j+i}``; ``blocks[j][0] is
    blocks[j-1][k-1]``.  An entry whose precision ran out is stored as
    ``None`` and raises :class:`PrecisionExhausted` when accessed.
    """

    def __init__(self, k: int, seed_precision: int, blocks: list[tuple[TruncatedSeries | None, ...]]):
        self.k = k
        self.seed_precision = seed_precision
        self._blocks = blocks

    @property
    def jmax(self) -> int:
        return len(self._blocks) - 1

    def __len__(self) -> int:
        return (self.k - 1) * self.jmax + self.k

    def entry(self, j: int, i: int) -> TruncatedSeries:
        idx = GordonIndex(self.k, j, i)
        if j > self.jmax:
            raise IndexError(f"depth {j} beyond computed depth {self.jmax}")
        g = self._blocks[j][i - 1]
        if g is None:
            raise PrecisionExhausted(
                f"G_{idx.s} (j={j}, i={i}) exhausted seed precision {self.seed_precision}"
            )
        return g

    def available(self, j: int, i: int) -> bool:
        return j <= self.jmax and self._blocks[j][i - 1] is not None

    def __getitem__(self, s: int) -> TruncatedSeries:
        idx = GordonIndex.from_linear(self.k, s)
        if idx.j > self.jmax:
            raise IndexError(f"G_{s} lies beyond depth {self.jmax}")
        return self.entry(idx.j, idx.i)

    def vector(self, j: int) -> tuple[TruncatedSeries, ...]:
        """``G_(j) = (G_{(k-1)j+1}, ..., G_{(k-1)j+k})``."""
        return tuple(self.entry(j, i) for i in range(1, self.k + 1))

    def truncated(self, N: int) -> GordonSequence:
        blocks = []
        for blk in self._blocks:
            blocks.append(tuple(None if g is None or g.precision < N else g.truncate(N) for g in blk))
        # Re-share block boundaries after truncation.
        for j in range(1, len(blocks)):
            blocks[j] = (blocks[j - 1][-1],) + blocks[j][1:]
        return GordonSequence(self.k, N, blocks)

    def replaced(self, s: int, series: TruncatedSeries) -> GordonSequence:
        """Copy with ``G_s`` swapped out (both indexings of a boundary entry)."""
        idx = GordonIndex.from_linear(self.k, s)
        blocks = [list(b) for b in self._blocks]
        blocks[idx.j][idx.i - 1] = series
        if idx.i == self.k and idx.j + 1 < len(blocks):
            blocks[idx.j + 1][0] = series
        return GordonSequence(self.k, self.seed_precision, [tuple(b) for b in blocks])


def next_block(k: int, j: int, prev: tuple[TruncatedSeries | None, ...], strict: bool = True):
    """Block ``j`` from block ``j-1``.  Divisibility failures always raise."""
    out: list[TruncatedSeries | None] = [prev[k - 1]]
    for i in range(2, k + 1):
        a, b = prev[k - i], prev[k - i + 1]
        if a is None or b is None:
            out.append(None)
            continue
        try:
            out.append(shift_divide(series_sub(a, b), (i - 1) * j))
        except PrecisionExhausted:
            if strict:
                raise
            out.append(None)
    return tuple(out)


def generate_sequence(k: int, jmax: int, N: int, strict: bool = True) -> GordonSequence:
    """Run the recursion from the product seeds ``G_1..G_k`` at precision ``N``.

    With ``strict`` an exhausted entry raises :class:`PrecisionExhausted`;
    otherwise it is recorded and only raises on access.
    :class:`~qgordon.errors.NotDivisible` is always raised.
    """
    check_gordon_params(k, 1)
    if jmax < 0:
        raise ParamOutOfRange(f"jmax must be >= 0, got {jmax}")
    blocks = [tuple(product_G(k, i, N) for i in range(1, k + 1))]
    for j in range(1, jmax + 1):
        blocks.append(next_block(k, j, blocks[-1], strict))
    return GordonSequence(k, N, blocks)


@lru_cache(maxsize=64)
def gordon_sequence(k: int, jmax: int, N: int) -> GordonSequence:
    """Every ``G_s`` through depth ``jmax`` at precision exactly ``N``.

    Seeds the recursion at :func:`seed_order` so nothing is exhausted.
    """
    return generate_sequence(k, jmax, seed_order(k, jmax, N)).truncated(N)


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class EmpiricalCheckResult:
    index: GordonIndex
    required_order: int
    observed_order: int | None  # None: G_s - 1 vanishes to the available precision
    remainder: TruncatedSeries | None  # gamma with G_s = 1 + q^required * gamma
    constant_term: int

    @property
    def passed(self) -> bool:
        if self.constant_term != 1:
            return False
        return self.observed_order is None or self.observed_order >= self.required_order

    def __bool__(self) -> bool:
        return self.passed


def empirical_hypothesis_check(
    k: int, j: int, i: int, N: int, sequence: GordonSequence | None = None
) -> EmpiricalCheckResult:
    """Check ``G_s = 1 + q^{j+1} gamma`` (``q^{j+2}`` when ``i = k``)."""
    idx = GordonIndex(k, j, i)
    if sequence is None:
        sequence = generate_sequence(k, j, N, strict=False)
    g = sequence.entry(j, i)
    need = idx.required_order
    if g.precision < need:
        raise InsufficientPrecision(
            f"G_{idx.s} known to q^{g.precision}, order {need} needs precision >= {need}"
        )
    rest = series_sub(g, TruncatedSeries.one(g.precision))
    observed = order_of(rest)
    remainder = None
    if observed is None or observed >= need:
        remainder = shift_divide(rest, need)
    return EmpiricalCheckResult(idx, need, observed, remainder, g.coeffs[0])


def h_equality_check(k: int, j: int, N: int) -> CheckReport:
    """Both closed forms of ``G_{(k-1)j+1}`` expand to the same series."""
    if j < 1:
        raise ParamOutOfRange(f"j must be >= 1, got {j}")
    lhs = closed_form_H(k, j, 1, N)
    rhs = closed_form_H(k, j - 1, k, N)
    return compare(lhs, rhs, label=f"H(j={j}, i=1) vs H(j={j - 1}, i={k})")


def triple_product_check(k: int, i: int, N: int) -> CheckReport:
    """Specialized triple product: theta numerator equals the complementary product."""
    return compare(theta_numerator(k, i, N), complementary_product(k, i, N), label="theta vs product")


def three_way_check(k: int, i: int, N: int) -> CheckReport:
    """Product side, both quotient forms and the j=0 closed form all agree."""
    g = product_G(k, i, N)
    for name, other in (
        ("first quotient form", sum_form_G(k, i, N, "first")),
        ("second quotient form", sum_form_G(k, i, N, "second")),
        ("closed form j=0", closed_form_H(k, 0, i, N)),
    ):
        rep = compare(g, other, label=f"product vs {name}")
        if not rep:
            return rep
    return CheckReport(True, precision=N)
