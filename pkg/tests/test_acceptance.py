"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import contextlib
import itertools

import pytest

import test_series
from oracles import all_partitions, gordon_counts, gordon_distance_form, gordon_multiplicity_form
from qgordon.engine import (
    GordonIndex,
    closed_form_H,
    empirical_hypothesis_check,
    generate_sequence,
    gordon_sequence,
    h_equality_check,
    product_G,
    triple_product_check,
)
from qgordon.errors import InsufficientPrecision
from qgordon.matrices import expand_G, h_matrix, h_paths_check, step_check, verify_inverse
from qgordon.partitions import (
    gf_gordon,
    gf_h_entry,
    gf_tail,
    multiplicity_split_checks,
    satisfies_gordon,
    uniqueness_check,
)
from qgordon.report import compare

K5 = (2, 3, 4, 5)
K4 = (2, 3, 4)


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title):
        notes = []
        try:
            yield notes
        except BaseException:
            with capsys.disabled():
                print(f"\ncriterion {number:>2}: FAIL  {title}")
            raise
        with capsys.disabled():
            extra = f"  [{'; '.join(notes)}]" if notes else ""
            print(f"\ncriterion {number:>2}: PASS  {title}{extra}")

    return run


def test_criterion_01_gordon_identities(criterion):
    with criterion(1, "product side equals partition count, k=2..5, q^0..q^60"):
        for k in K5:
            for i in range(1, k + 1):
                got = product_G(k, i, 200).truncate(60)
                assert compare(got, gf_gordon(k, i, 60)), (k, i)


def test_criterion_02_rogers_ramanujan(criterion):
    with criterion(2, "k=2 coefficients through q^10 match the difference-two oracle"):
        g1 = (1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6)
        g2 = (1, 0, 1, 1, 1, 1, 2, 2, 3, 3, 4)
        assert tuple(gordon_counts(2, 1, 10)) == g1 and tuple(gordon_counts(2, 0, 10)) == g2
        assert product_G(2, 1, 10).coeffs == g1 and product_G(2, 2, 10).coeffs == g2
        assert gf_gordon(2, 1, 10).coeffs == g1 and gf_gordon(2, 2, 10).coeffs == g2


def test_criterion_03_triple_product(criterion):
    with criterion(3, "theta numerator equals complementary product, k=2..5, N=200"):
        for k in K5:
            for i in range(1, k + 1):
                assert triple_product_check(k, i, 200), (k, i)


def test_criterion_04_recursion_vs_closed_form(criterion):
    with criterion(4, "recursion agrees with closed form, k=2..5, j<=20, N=200") as notes:
        checked = exhausted = 0
        for k in K5:
            # A NotDivisible anywhere in the recursion would raise here.
            seq = generate_sequence(k, 20, 200, strict=False)
            for s in range(1, len(seq) + 1):
                idx = GordonIndex.from_linear(k, s)
                if not seq.available(idx.j, idx.i):
                    exhausted += 1
                    continue
                assert compare(seq[s], closed_form_H(k, idx.j, idx.i, 200)), (k, s)
                checked += 1
            # Seeded with enough headroom, every entry is compared at full order.
            full = gordon_sequence(k, 20, 200)
            for s in range(1, len(full) + 1):
                idx = GordonIndex.from_linear(k, s)
                assert full[s].precision == 200
                assert compare(full[s], closed_form_H(k, idx.j, idx.i, 200)), (k, s)
        notes.append(f"{checked} entries at available precision, {exhausted} exhausted; all at q^200 with headroom")


def test_criterion_05_h_equality(criterion):
    with criterion(5, "two expansions of the boundary series agree, k=2..5, 1<=j<=20, N=200"):
        for k in K5:
            for j in range(1, 21):
                assert h_equality_check(k, j, 200), (k, j)


def test_criterion_06_empirical_hypothesis(criterion):
    with criterion(6, "constant term 1 and required order, k=2..5, j<=20") as notes:
        checked = skipped = 0
        for k in K5:
            literal = generate_sequence(k, 20, 200, strict=False)
            full = gordon_sequence(k, 20, 200)
            for j in range(21):
                for i in range(1, k + 1):
                    if literal.available(j, i):
                        try:
                            assert empirical_hypothesis_check(k, j, i, 200, sequence=literal), (k, j, i)
                            checked += 1
                        except InsufficientPrecision:
                            skipped += 1
                    else:
                        skipped += 1
                    res = empirical_hypothesis_check(k, j, i, 200, sequence=full)
                    assert res.passed and res.constant_term == 1, (k, j, i)
        notes.append(f"{checked} literal entries, {skipped} beyond literal precision; all pass with headroom")


def test_criterion_07_matrix_layer(criterion):
    with criterion(7, "inverse pairs k<=6 j<=10; step and expansion k<=5 j<=20 N=200; h paths agree"):
        for k in range(2, 7):
            for j in range(1, 11):
                assert verify_inverse(k, j), (k, j)
        for k in K5:
            for j in range(21):
                assert h_paths_check(k, j), (k, j)
            literal = generate_sequence(k, 20, 200, strict=False)
            full = gordon_sequence(k, 20, 200)
            for j in range(21):
                for seq in (literal, full):
                    usable = all(seq.available(j, i) for i in range(1, k + 1)) and (
                        j == 0 or all(seq.available(j - 1, i) for i in range(1, k + 1))
                    )
                    if seq is full:
                        assert usable
                    if not usable:
                        continue
                    if j >= 1:
                        assert step_check(k, j, 200, seq), (k, j)
                    assert expand_G(k, j, 200, seq), (k, j)


def test_criterion_08_h_entries(criterion):
    with criterion(8, "enumerated h-entries equal matrix entries, k<=4, j<=8"):
        for k in K4:
            for j in range(1, 9):
                h = h_matrix(k, j)
                for i, l in itertools.product(range(1, k + 1), repeat=2):
                    assert gf_h_entry(k, i, j, l) == h.entry(i, l), (k, j, i, l)


def test_criterion_09_tail(criterion):
    with criterion(9, "tail partition counts equal recursion series, k<=4, j<=8, N=60"):
        for k in K4:
            seq = gordon_sequence(k, 8, 60)
            for j in range(9):
                for l in range(1, k + 1):
                    tail = gf_tail(k, j, l, 60)
                    assert seq.entry(j, l).precision == 60
                    assert compare(tail, seq.entry(j, l)), (k, j, l)


def test_criterion_10_split_and_uniqueness(criterion):
    with criterion(10, "multiplicity split and uniqueness path, k<=4, j<=8, N=60"):
        for k in K4:
            for i in range(1, k + 1):
                for j, rep in multiplicity_split_checks(k, i, range(1, 9), 60).items():
                    assert rep, (k, i, j, rep.reason)
            assert uniqueness_check(k, 8, 60), k


def test_criterion_11_properties(criterion):
    with criterion(11, "ring laws, round trips, and condition equivalence for m<=25, k<=5"):
        test_series.test_ring_laws()
        test_series.test_invert_round_trip()
        test_series.test_shift_mul_round_trip()
        test_series.test_kronecker_matches_schoolbook_and_dict_oracle()
        for m in range(26):
            for p in all_partitions(m):
                for k in K5:
                    assert gordon_distance_form(p, k) == gordon_multiplicity_form(p, k) == satisfies_gordon(p, k)
