"""Brute-force enumeration of Gordon-type partitions.

This is the combinatorial ground truth for the series machinery, so it
never touches products or inverses: every count is obtained by walking the
partitions themselves.

A partition ``p_1 >= ... >= p_n`` has *difference at least 2 at distance
t* when ``p_s - p_{s+t} >= 2`` for all valid ``s``; Gordon's identities use
``t = k - 1``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

from .engine import GordonIndex, closed_form_H, gordon_sequence
from .errors import ParamOutOfRange
from .matrices import h_matrix
from .report import CheckReport, compare
from .series import LaurentPolynomial, TruncatedSeries, check_gordon_params, series_add, series_mul


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(self.parts)
        object.__setattr__(self, "parts", ps)
        if any(p <= 0 for p in ps) or any(a < b for a, b in zip(ps, ps[1:])):
            raise ValueError(f"not a partition: {ps}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return " ".join(map(str, self.parts))


@dataclass(frozen=True)
class GordonConstraint:
    """Side conditions on top of the distance-(k-1) difference-two condition.

    ``min_part_exclusive=j`` means every part is ``> j``.  The designated
    part carries either an exact or a maximum multiplicity.
    """

    k: int
    max_ones: int | None = None
    min_part_exclusive: int | None = None
    max_part: int | None = None
    designated_part: int | None = None
    exact_multiplicity: int | None = None
    max_multiplicity: int | None = None

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ParamOutOfRange(f"k must be >= 2, got {self.k!r}")
        if self.max_ones is not None and self.max_ones < 0:
            raise ParamOutOfRange("max_ones must be >= 0")
        if self.max_ones is not None and (self.min_part_exclusive or 0) >= 1:
            raise ValueError("max_ones cannot be combined with a positive lower bound on parts")
        if (self.exact_multiplicity is None) == (self.max_multiplicity is None):
            if self.designated_part is not None:
                raise ValueError("designated part needs exactly one of exact/max multiplicity")
        elif self.designated_part is None:
            raise ValueError("multiplicity condition given without a designated part")
        if self.designated_part is not None and self.designated_part < 1:
            raise ParamOutOfRange("designated part must be positive")

    @property
    def lowest_part(self) -> int:
        return (self.min_part_exclusive or 0) + 1

    def admits(self, parts: tuple[int, ...]) -> bool:
        """Full, non-incremental check of every condition."""
        if not satisfies_gordon(parts, self.k):
            return False
        if parts and parts[-1] < self.lowest_part:
            return False
        if self.max_part is not None and parts and parts[0] > self.max_part:
            return False
        if self.max_ones is not None and parts.count(1) > self.max_ones:
            return False
        if self.designated_part is not None:
            f = parts.count(self.designated_part)
            if self.exact_multiplicity is not None and f != self.exact_multiplicity:
                return False
            if self.max_multiplicity is not None and f > self.max_multiplicity:
                return False
        return True


def satisfies_gordon(parts, k: int) -> bool:
    """``p_s - p_{s+k-1} >= 2`` for every valid ``s``."""
    if k < 2:
        raise ParamOutOfRange(f"k must be >= 2, got {k}")
    ps = parts.parts if isinstance(parts, Partition) else tuple(parts)
    t = k - 1
    return all(ps[s] - ps[s + t] >= 2 for s in range(len(ps) - t))


def walk(c: GordonConstraint, max_weight: int, visit: Callable[[list[int], int], None]) -> None:
    """Call ``visit(parts, weight)`` once per admissible partition of weight ``<= max_weight``.

    Parts are chosen largest first; ``parts`` is the live working list, so
    copy it if it must outlive the call.
    """
    t = c.k - 1
    lo = c.lowest_part
    hi0 = max_weight if c.max_part is None else min(c.max_part, max_weight)
    dp = c.designated_part
    exact = c.exact_multiplicity
    cap = c.max_multiplicity
    max_ones = c.max_ones
    parts: list[int] = []

    def final_ok(n_dp: int) -> bool:
        return exact is None or n_dp == exact

    def descend(weight: int, top: int, n_dp: int) -> None:
        n = len(parts)
        bound = parts[n - t] - 2 if n >= t else top
        hi = min(top, bound, max_weight - weight)
        for p in range(hi, lo - 1, -1):
            m = n_dp
            if p == dp:
                m += 1
                if (cap is not None and m > cap) or (exact is not None and m > exact):
                    continue
            elif dp is not None and exact is not None and p < dp and m != exact:
                # The designated part can no longer appear.
                break
            if p == 1 and max_ones is not None and parts.count(1) >= max_ones:
                continue
            parts.append(p)
            if final_ok(m):
                visit(parts, weight + p)
            descend(weight + p, p, m)
            parts.pop()

    if final_ok(0):
        visit(parts, 0)
    descend(0, hi0, 0)


def enumerate_partitions(m: int, c: GordonConstraint) -> list[Partition]:
    """All partitions of ``m`` admitted by ``c``, in decreasing lexicographic order."""
    if m < 0:
        raise ValueError("weight must be nonnegative")
    found: list[tuple[int, ...]] = []

    def visit(parts, w):
        if w == m:
            found.append(tuple(parts))

    walk(c, m, visit)
    found.sort(reverse=True)
    return [Partition(p) for p in found]


def count_by_weight(c: GordonConstraint, N: int) -> list[int]:
    counts = [0] * (N + 1)

    def visit(parts, w):
        counts[w] += 1

    walk(c, N, visit)
    return counts


def gordon_constraint(k: int, i: int) -> GordonConstraint:
    """Type ``(k-1, k-i)``: the Gordon condition with at most ``k-i`` ones."""
    check_gordon_params(k, i)
    return GordonConstraint(k, max_ones=k - i)


def tail_constraint(k: int, j: int, l: int) -> GordonConstraint:
    """Smallest part ``> j`` and ``j+1`` appearing at most ``k-l`` times."""
    check_gordon_params(k, l)
    if j < 0:
        raise ParamOutOfRange(f"j must be >= 0, got {j}")
    return GordonConstraint(
        k, min_part_exclusive=j or None, designated_part=j + 1, max_multiplicity=k - l
    )


@lru_cache(maxsize=256)
def gf_gordon(k: int, i: int, N: int) -> TruncatedSeries:
    return TruncatedSeries(count_by_weight(gordon_constraint(k, i), N), N)


@lru_cache(maxsize=1024)
def gf_tail(k: int, j: int, l: int, N: int) -> TruncatedSeries:
    return TruncatedSeries(count_by_weight(tail_constraint(k, j, l), N), N)


@lru_cache(maxsize=256)
def _h_entry_table(k: int, j: int) -> dict[tuple[int, int], dict[int, int]]:
    # (ones, multiplicity of j) -> {weight: count}; every Gordon partition
    # with parts <= j has weight <= (k-1) j (j+1) / 2.
    table: dict[tuple[int, int], dict[int, int]] = {}
    bound = (k - 1) * j * (j + 1) // 2

    def visit(parts, w):
        key = (parts.count(1), parts.count(j))
        row = table.setdefault(key, {})
        row[w] = row.get(w, 0) + 1

    walk(GordonConstraint(k, max_part=j), bound, visit)
    return table


def gf_h_entry(k: int, i: int, j: int, l: int) -> LaurentPolynomial:
    """Generating polynomial: type ``(k-1, k-i)``, parts ``<= j``, ``j`` exactly ``l-1`` times."""
    check_gordon_params(k, i)
    check_gordon_params(k, l)
    if j < 1:
        raise ParamOutOfRange(f"j must be >= 1, got {j}")
    terms: dict[int, int] = {}
    for (ones, mult), row in _h_entry_table(k, j).items():
        if ones <= k - i and mult == l - 1:
            for w, n in row.items():
                terms[w] = terms.get(w, 0) + n
    return LaurentPolynomial.from_terms(terms)


def multiplicity_split_check(k: int, i: int, j: int, N: int) -> CheckReport:
    """Split type ``(k-1, k-i)`` partitions by how often ``j`` occurs.

    Bucket ``l-1`` must have generating function ``h^(j)[i, l] * G_{(k-1)j+l}``
    and the buckets must add up to the full generating function.
    """
    return multiplicity_split_checks(k, i, [j], N)[j]


def multiplicity_split_checks(k: int, i: int, js, N: int) -> dict[int, CheckReport]:
    """:func:`multiplicity_split_check` for several ``j`` with a single enumeration."""
    check_gordon_params(k, i)
    js = sorted(set(js))
    if not js or js[0] < 1:
        raise ParamOutOfRange(f"every j must be >= 1, got {js}")
    # buckets[j][f][w]: partitions of weight w in which part j occurs f times
    buckets: dict[int, dict[int, list[int]]] = {j: {} for j in js}

    def visit(parts, w):
        for j in js:
            f = parts.count(j)
            row = buckets[j].get(f)
            if row is None:
                row = buckets[j][f] = [0] * (N + 1)
            row[w] += 1

    walk(gordon_constraint(k, i), N, visit)
    total_gf = gf_gordon(k, i, N)
    seq = gordon_sequence(k, js[-1], N)
    out = {}
    for j in js:
        out[j] = _split_report(k, i, j, N, buckets[j], seq, total_gf)
    return out


def _split_report(k, i, j, N, buckets, seq, total_gf) -> CheckReport:
    if any(f >= k for f in buckets):
        return CheckReport(False, reason=f"part {j} occurs {max(buckets)} >= k times")
    h = h_matrix(k, j)
    total = TruncatedSeries.zero(N)
    for l in range(1, k + 1):
        got = TruncatedSeries(buckets.get(l - 1, []), N)
        want = series_mul(h.entry(i, l).to_series(N), seq.entry(j, l))
        rep = compare(got, want, label=f"j={j} bucket {l - 1}")
        if not rep:
            return rep
        total = series_add(total, got)
    return compare(total, total_gf, label=f"j={j} sum of buckets")


def uniqueness_check(k: int, jmax: int, N: int) -> CheckReport:
    """Alternate proof path: the tail generating functions K_s behave like G_s.

    Checks that every ``K_s`` has constant term 1, that the two indexings of
    each block boundary agree, that the additive recursion

        K_{(k-1)(j-1)+l} = K_{(k-1)(j-1)+l+1} + q^{(k-l)j} K_{(k-1)j+k-l+1}

    holds, that the order conditions hold, and finally that ``K_s = G_s``.
    """
    check_gordon_params(k, 1)
    if jmax < 1:
        raise ParamOutOfRange(f"jmax must be >= 1, got {jmax}")

    def K(j, l):
        return gf_tail(k, j, l, N)

    for j in range(jmax + 1):
        for l in range(1, k + 1):
            if K(j, l).coeffs[0] != 1:
                return CheckReport(False, reason=f"K(j={j}, l={l}) has constant term {K(j, l).coeffs[0]}")
    for j in range(1, jmax + 1):
        rep = compare(K(j, 1), K(j - 1, k), label=f"boundary j={j}")
        if not rep:
            return rep
        for l in range(1, k):
            shifted = series_mul(TruncatedSeries.monomial((k - l) * j, N), K(j, k - l + 1))
            rep = compare(K(j - 1, l), series_add(K(j - 1, l + 1), shifted), label=f"recursion j={j}, l={l}")
            if not rep:
                return rep
    for j in range(jmax + 1):
        for l in range(1, k + 1):
            idx = GordonIndex(k, j, l)
            rest = K(j, l).coeffs[1:idx.required_order]
            if any(rest):
                return CheckReport(False, reason=f"K(j={j}, l={l}) - 1 has order below {idx.required_order}")
    seq = gordon_sequence(k, jmax, N)
    for j in range(jmax + 1):
        for l in range(1, k + 1):
            rep = compare(K(j, l), seq.entry(j, l), label=f"K vs G at j={j}, l={l}")
            if not rep:
                return rep
            rep = compare(K(j, l), closed_form_H(k, j, l, N), label=f"K vs H at j={j}, l={l}")
            if not rep:
                return rep
    return CheckReport(True, precision=N)
