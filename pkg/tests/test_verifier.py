import json

import pytest

from oracles import gordon_counts
from qgordon.report import Mismatch
from qgordon.verifier import (
    SUITES,
    CheckRecord,
    ConfigError,
    VerificationConfig,
    dump_seeds,
    exit_status,
    render_report,
    run_verification,
    series_command,
    summarize,
)

SMALL = dict(k_values=(2, 3), order=30, jmax=3, oracle_order=20, oracle_jmax=3)


@pytest.fixture(scope="module")
def small_records():
    return run_verification(VerificationConfig(**SMALL))


def test_small_run_all_suites(small_records):
    assert {r.suite for r in small_records} == set(SUITES)
    s = summarize(small_records)
    assert s["fail"] == 0
    assert exit_status(small_records) == 0


def test_records_are_sorted(small_records):
    assert small_records == sorted(small_records, key=CheckRecord.sort_key)


def test_triple_product_record_count():
    recs = run_verification(VerificationConfig(k_values=(3,), order=100, suites=("triple_product",)))
    assert [r.params["i"] for r in recs] == [1, 2, 3]
    assert all(r.status == "pass" for r in recs)


def test_exhausted_precision_is_skipped_with_reason():
    recs = run_verification(VerificationConfig(k_values=(2,), order=2, jmax=5, suites=("recursion",)))
    skipped = [r for r in recs if r.status == "skipped"]
    assert skipped and all("PrecisionExhausted" in r.reason for r in skipped)
    assert not any(r.status == "fail" for r in recs)
    assert exit_status(recs) == 0 and exit_status(recs, strict=True) == 1


def test_headroom_removes_skips():
    cfg = VerificationConfig(k_values=(2,), order=2, jmax=5, suites=("recursion",), headroom=True)
    recs = run_verification(cfg)
    assert summarize(recs) == {"pass": len(recs), "fail": 0, "skipped": 0}
    # The order check for depth j still needs j + 2 known coefficients.
    cfg = VerificationConfig(k_values=(2,), order=7, jmax=5, suites=("empirical",), headroom=True)
    assert summarize(run_verification(cfg))["skipped"] == 0


def test_parallel_run_is_byte_identical():
    cfg = VerificationConfig(**SMALL)
    cfg2 = VerificationConfig(**SMALL, jobs=2)
    for fmt in ("json", "text"):
        a = render_report(run_verification(cfg), fmt, cfg)
        b = render_report(run_verification(cfg2), fmt, cfg2)
        assert a == b


@pytest.mark.parametrize(
    "bad",
    [
        dict(k_values=()),
        dict(k_values=(1,)),
        dict(order=0),
        dict(jmax=-1),
        dict(suites=("nope",)),
        dict(format="xml"),
        dict(jobs=0),
    ],
)
def test_config_errors(bad):
    with pytest.raises(ConfigError):
        run_verification(VerificationConfig(**bad))


# -- rendering ------------------------------------------------------------


def test_render_empty_json():
    doc = json.loads(render_report([], "json", VerificationConfig()))
    assert doc["summary"] == {"pass": 0, "fail": 0, "skipped": 0}
    assert doc["checks"] == []
    assert set(doc["config"]) >= {"k", "order", "jmax", "suites"}


def test_render_failing_record():
    rec = CheckRecord("recursion", "recursion_vs_closed_form", {"k": 2, "j": 1, "i": 2, "N": 9}, "fail",
                      Mismatch(4, 2, 1), "differ at q^4")
    doc = json.loads(render_report([rec], "json"))
    assert doc["summary"]["fail"] == 1
    assert doc["checks"][0]["witness"] == {"exponent": 4, "lhs": 2, "rhs": 1}
    text = render_report([rec], "text")
    assert "q^4: 2 vs 1" in text
    assert text.splitlines()[-1] == "summary: pass=0 fail=1 skipped=0"
    assert exit_status([rec]) == 1


def test_text_columns_aligned(small_records):
    lines = render_report(small_records, "text").splitlines()[1:-1]
    status_cols = {ln.index(" pass") for ln in lines if " pass" in ln}
    assert len(status_cols) == 1


# -- inspection -----------------------------------------------------------


def test_series_command_k2_s3():
    out = series_command(2, 3, 9)
    expected = "1 + q^3 + q^4 + q^5 + q^6 + q^7 + 2*q^8 + 2*q^9 + O(q^10)"
    body = out.splitlines()
    assert sum(expected in ln for ln in body) == 2
    assert "agree" in body[-1]


def test_series_command_seed():
    # Parts avoiding 0, 2, 5 mod 7: 1, 1, 1, 2, 3, 3 partitions of 0..5.
    assert gordon_counts(3, 1, 5) == [1, 1, 1, 2, 3, 3]
    assert "1 + q + q^2 + 2*q^3 + 3*q^4 + 3*q^5 + O(q^6)" in series_command(3, 2, 5)
    assert "j=0" in series_command(4, 1, 5)


def test_dump_seeds(tmp_path):
    paths = dump_seeds(VerificationConfig(k_values=(2,), order=10), tmp_path)
    assert [p.name for p in paths] == ["seeds_k2_N10.txt"]
    lines = paths[0].read_text().splitlines()
    assert lines == ["1 1 1 1 2 2 3 3 4 5 6", "1 0 1 1 1 1 2 2 3 3 4"]


def test_default_run_k2():
    recs = run_verification(VerificationConfig(k_values=(2,)))
    assert {r.suite for r in recs} == set(SUITES)
    assert summarize(recs)["fail"] == 0
    # Depth-20 entries seeded at N=200 run out of precision; they are skipped, not failed.
    assert all("PrecisionExhausted" in r.reason or "InsufficientPrecision" in r.reason
               for r in recs if r.status == "skipped")


def test_full_default_run():
    cfg = VerificationConfig()
    recs = run_verification(cfg)
    doc = json.loads(render_report(recs, "json", cfg))
    assert doc["summary"]["fail"] == 0
    assert exit_status(recs) == 0
