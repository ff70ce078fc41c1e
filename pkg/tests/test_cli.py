import json
import subprocess
import sys

import pytest

from qgordon.cli import main

SMALL = ["--k", "2", "--order", "20", "--jmax", "2", "--oracle-order", "15", "--oracle-jmax", "2"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", *SMALL, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["fail"] == 0
    assert doc["config"]["k"] == [2] and doc["config"]["order"] == 20
    assert {c["suite"] for c in doc["checks"]} == {
        "products", "triple_product", "closed_form", "recursion", "empirical", "matrices", "partitions", "uniqueness"
    }


def test_verify_repeatable_and_comma_k(capsys):
    code, out, _ = run(capsys, "verify", "--k", "2,3", "--k", "4", "--suite", "triple_product", "--order", "30",
                       "--format", "json")
    ks = [c["params"]["k"] for c in json.loads(out)["checks"]]
    assert code == 0 and ks == [2, 2, 3, 3, 3, 4, 4, 4, 4]


def test_verify_strict_exit(capsys):
    args = ["verify", "--k", "2", "--order", "2", "--jmax", "5", "--suite", "recursion"]
    code, out, _ = run(capsys, *args)
    assert code == 0 and "skipped" in out
    code, _, _ = run(capsys, *args, "--strict")
    assert code == 1


def test_verify_config_error(capsys):
    code, _, err = run(capsys, "verify", "--k", "1")
    assert code == 2 and "k must be" in err
    code, _, _ = run(capsys, "verify", "--order", "0")
    assert code == 2


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nope"])
    assert info.value.code == 2


def test_verify_jobs_auto_matches_serial(capsys):
    base = ["verify", *SMALL, "--suite", "recursion", "--suite", "matrices"]
    _, a, _ = run(capsys, *base)
    _, b, _ = run(capsys, *base, "--jobs", "auto")
    _, c, _ = run(capsys, *base, "--jobs", "2")
    assert a == b == c


def test_seed_dump_dir(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--k", "3", "--order", "12", "--suite", "products",
                     "--seed-dump-dir", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "seeds_k3_N12.txt").read_text().splitlines()
    assert len(lines) == 3 and lines[0].startswith("1 1 2 2")


def test_series_subcommand(capsys):
    code, out, _ = run(capsys, "series", "--k", "2", "--s", "3", "--order", "9")
    assert code == 0
    assert out.count("1 + q^3 + q^4 + q^5 + q^6 + q^7 + 2*q^8 + 2*q^9 + O(q^10)") == 2


def test_series_bad_index(capsys):
    code, _, err = run(capsys, "series", "--k", "2", "--s", "0")
    assert code == 2 and err


def test_hmatrix_subcommand(capsys):
    code, out, _ = run(capsys, "hmatrix", "--k", "2", "--j", "2")
    assert code == 0
    assert out.splitlines() == ["[ 1 + q  q^2 ]", "[     1  q^2 ]"]
    _, out, _ = run(capsys, "hmatrix", "--k", "2", "--j", "1", "--which", "B")
    assert "-q^-1" in out
    _, out, _ = run(capsys, "hmatrix", "--k", "3", "--j", "2", "--which", "A")
    assert "q^4" in out


def test_partitions_subcommand(capsys):
    code, out, _ = run(capsys, "partitions", "--m", "10", "--k", "2", "--max-ones", "0")
    assert code == 0 and out.splitlines() == ["10", "8 2", "7 3", "6 4"]
    _, out, _ = run(capsys, "partitions", "--m", "10", "--k", "2", "--max-ones", "0", "--count")
    assert out.strip() == "4"


def test_partitions_bad_constraint(capsys):
    code, _, err = run(capsys, "partitions", "--m", "5", "--k", "3", "--designated-part", "2")
    assert code == 2 and "designated" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qgordon", "hmatrix", "--k", "2", "--j", "1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[1].split() == ["[", "1", "0", "]"]
