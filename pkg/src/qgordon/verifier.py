"""Run every check over a grid of (k, j, i, l) and assemble a deterministic report."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import engine, matrices, partitions
from .engine import GordonIndex, GordonSequence
from .errors import InsufficientPrecision, NotDivisible, PrecisionExhausted
from .report import CheckReport, Mismatch, compare
from .series import render_series

SUITES = (
    "products",
    "triple_product",
    "closed_form",
    "recursion",
    "empirical",
    "matrices",
    "partitions",
    "uniqueness",
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class VerificationConfig:
    k_values: tuple[int, ...] = (2, 3, 4, 5)
    order: int = 200
    jmax: int = 20
    suites: tuple[str, ...] = SUITES
    format: str = "text"
    jobs: int | None = 1  # None means one worker per CPU
    strict: bool = False
    # The enumeration oracle is exponential, so it runs at its own scale.
    oracle_order: int = 60
    oracle_jmax: int = 8
    # Seed the recursion high enough that no entry through jmax is exhausted.
    headroom: bool = False

    def validate(self) -> None:
        if not self.k_values:
            raise ConfigError("at least one k is required")
        for k in self.k_values:
            if not isinstance(k, int) or k < 2:
                raise ConfigError(f"k must be an integer >= 2, got {k!r}")
        if self.order < 1:
            raise ConfigError(f"order must be >= 1, got {self.order}")
        if self.jmax < 0:
            raise ConfigError(f"jmax must be >= 0, got {self.jmax}")
        if self.oracle_order < 0 or self.oracle_jmax < 1:
            raise ConfigError("oracle order must be >= 0 and oracle jmax >= 1")
        unknown = set(self.suites) - set(SUITES)
        if unknown or not self.suites:
            raise ConfigError(f"unknown suites {sorted(unknown)}; choose from {', '.join(SUITES)}")
        if self.format not in ("json", "text"):
            raise ConfigError(f"format must be json or text, got {self.format!r}")
        if self.jobs is not None and self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def as_dict(self) -> dict:
        return {
            "k": list(self.k_values),
            "order": self.order,
            "jmax": self.jmax,
            "suites": list(self.suites),
            "oracle_order": self.oracle_order,
            "oracle_jmax": self.oracle_jmax,
            "headroom": self.headroom,
        }


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    check: str
    params: dict = field(hash=False)
    status: str
    witness: Mismatch | None = None
    reason: str = ""

    def sort_key(self):
        p = self.params
        return (
            SUITES.index(self.suite),
            p.get("k", -1),
            p.get("j", -1),
            p.get("i", -1),
            p.get("l", -1),
            self.check,
        )

    def as_dict(self) -> dict:
        d = {"suite": self.suite, "check": self.check, "params": self.params, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness.as_dict()
        if self.reason:
            d["reason"] = self.reason
        return d


def _record(suite: str, check: str, params: dict, rep: CheckReport) -> CheckRecord:
    if rep.passed:
        return CheckRecord(suite, check, params, PASS)
    return CheckRecord(suite, check, params, FAIL, rep.witness, rep.reason)


def _guarded(suite: str, check: str, params: dict, fn) -> CheckRecord:
    """Run one check; precision problems become skips and falsified divisions become failures."""
    try:
        rep = fn()
    except (PrecisionExhausted, InsufficientPrecision) as exc:
        return CheckRecord(suite, check, params, SKIPPED, reason=f"{type(exc).__name__}: {exc}")
    except NotDivisible as exc:
        return CheckRecord(
            suite, check, params, FAIL, Mismatch(exc.exponent, exc.coefficient, 0), f"{type(exc).__name__}: {exc}"
        )
    return _record(suite, check, params, rep)


def _sequence(k: int, config: VerificationConfig) -> GordonSequence:
    if config.headroom:
        return engine.gordon_sequence(k, config.jmax, config.order)
    return engine.generate_sequence(k, config.jmax, config.order, strict=False)


# ---------------------------------------------------------------------------
# suites; each returns the records for one k


def _products(k, config):
    N = config.order
    return [
        _guarded("products", "three_way", {"k": k, "i": i, "N": N}, lambda i=i: engine.three_way_check(k, i, N))
        for i in range(1, k + 1)
    ]


def _triple_product(k, config):
    N = config.order
    return [
        _guarded("triple_product", "theta_vs_product", {"k": k, "i": i, "N": N},
                 lambda i=i: engine.triple_product_check(k, i, N))
        for i in range(1, k + 1)
    ]


def _closed_form(k, config):
    N = config.order
    return [
        _guarded("closed_form", "h_equality", {"k": k, "j": j, "N": N}, lambda j=j: engine.h_equality_check(k, j, N))
        for j in range(1, config.jmax + 1)
    ]


def _recursion(k, config):
    N = config.order
    try:
        seq = _sequence(k, config)
    except NotDivisible as exc:
        return [CheckRecord("recursion", "divisibility", {"k": k, "N": N}, FAIL,
                            Mismatch(exc.exponent, exc.coefficient, 0), str(exc))]
    out = []
    for s in range(1, len(seq) + 1):
        idx = GordonIndex.from_linear(k, s)
        params = {"k": k, "j": idx.j, "i": idx.i, "s": s, "N": N}
        out.append(_guarded(
            "recursion", "recursion_vs_closed_form", params,
            lambda idx=idx: compare(seq.entry(idx.j, idx.i), engine.closed_form_H(k, idx.j, idx.i, N)),
        ))
    return out


def _empirical(k, config):
    N = config.order
    try:
        seq = _sequence(k, config)
    except NotDivisible as exc:
        return [CheckRecord("empirical", "order", {"k": k, "N": N}, FAIL,
                            Mismatch(exc.exponent, exc.coefficient, 0), str(exc))]
    out = []
    for j in range(config.jmax + 1):
        for i in range(1, k + 1):
            def run(j=j, i=i):
                res = engine.empirical_hypothesis_check(k, j, i, N, sequence=seq)
                if res.passed:
                    return CheckReport(True)
                return CheckReport(False, reason=(
                    f"constant term {res.constant_term}, order {res.observed_order} < {res.required_order}"
                ))
            out.append(_guarded("empirical", "order", {"k": k, "j": j, "i": i, "N": N}, run))
    return out


def _matrices(k, config):
    N = config.order
    out = []
    for j in range(config.jmax + 1):
        out.append(_guarded("matrices", "h_paths", {"k": k, "j": j}, lambda j=j: matrices.h_paths_check(k, j)))
        if j >= 1:
            out.append(_guarded("matrices", "inverse", {"k": k, "j": j}, lambda j=j: matrices.verify_inverse(k, j)))
    try:
        seq = _sequence(k, config)
    except NotDivisible as exc:
        out.append(CheckRecord("matrices", "step", {"k": k, "N": N}, FAIL,
                               Mismatch(exc.exponent, exc.coefficient, 0), str(exc)))
        return out
    for j in range(config.jmax + 1):
        if j >= 1:
            out.append(_guarded("matrices", "step", {"k": k, "j": j, "N": N},
                                lambda j=j: matrices.step_check(k, j, N, seq)))
        out.append(_guarded("matrices", "expand", {"k": k, "j": j, "N": N},
                            lambda j=j: matrices.expand_G(k, j, N, seq)))
    return out


def _partitions(k, config):
    N, J = config.oracle_order, config.oracle_jmax
    out = []
    for i in range(1, k + 1):
        out.append(_guarded("partitions", "gordon_identity", {"k": k, "i": i, "N": N},
                            lambda i=i: compare(partitions.gf_gordon(k, i, N), engine.product_G(k, i, N))))
    for j in range(1, J + 1):
        h = matrices.h_matrix(k, j)
        for i in range(1, k + 1):
            for l in range(1, k + 1):
                def run(i=i, j=j, l=l):
                    got = partitions.gf_h_entry(k, i, j, l)
                    want = h.entry(i, l)
                    return CheckReport(got == want, reason="" if got == want else f"{got} != {want}")
                out.append(_guarded("partitions", "h_entry", {"k": k, "i": i, "j": j, "l": l}, run))
    seq = engine.gordon_sequence(k, J, N)
    for j in range(J + 1):
        for l in range(1, k + 1):
            out.append(_guarded("partitions", "tail", {"k": k, "j": j, "l": l, "N": N},
                                lambda j=j, l=l: compare(partitions.gf_tail(k, j, l, N), seq.entry(j, l))))
    for i in range(1, k + 1):
        reps = partitions.multiplicity_split_checks(k, i, range(1, J + 1), N)
        for j, rep in reps.items():
            out.append(_record("partitions", "multiplicity_split", {"k": k, "i": i, "j": j, "N": N}, rep))
    return out


def _uniqueness(k, config):
    N, J = config.oracle_order, config.oracle_jmax
    return [_guarded("uniqueness", "uniqueness", {"k": k, "j": J, "N": N},
                     lambda: partitions.uniqueness_check(k, J, N))]


_RUNNERS = {
    "products": _products,
    "triple_product": _triple_product,
    "closed_form": _closed_form,
    "recursion": _recursion,
    "empirical": _empirical,
    "matrices": _matrices,
    "partitions": _partitions,
    "uniqueness": _uniqueness,
}


def _run_task(task):
    suite, k, config = task
    return _RUNNERS[suite](k, config)


def run_verification(config: VerificationConfig) -> list[CheckRecord]:
    """Run the requested suites for every k; failures never stop the run."""
    config.validate()
    tasks = [(suite, k, config) for suite in config.suites for k in config.k_values]
    jobs = config.jobs or os.cpu_count() or 1
    if jobs == 1 or len(tasks) == 1:
        chunks = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            chunks = list(pool.map(_run_task, tasks))
    records = [r for chunk in chunks for r in chunk]
    return sorted(records, key=CheckRecord.sort_key)


def summarize(records) -> dict:
    out = {PASS: 0, FAIL: 0, SKIPPED: 0}
    for r in records:
        out[r.status] += 1
    return out


def exit_status(records, strict: bool = False) -> int:
    s = summarize(records)
    if s[FAIL] or (strict and s[SKIPPED]):
        return 1
    return 0


def _params_text(params: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def render_report(records, format: str = "text", config: VerificationConfig | None = None) -> str:
    summary = summarize(records)
    if format == "json":
        doc = {
            "config": config.as_dict() if config is not None else {},
            "checks": [r.as_dict() for r in records],
            "summary": summary,
        }
        return json.dumps(doc, indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    rows = [("suite", "check", "params", "status", "detail")]
    for r in records:
        detail = r.reason
        if r.witness is not None:
            w = r.witness
            detail = f"q^{w.exponent}: {w.lhs} vs {w.rhs}" + (f" ({r.reason})" if r.reason else "")
        rows.append((r.suite, r.check, _params_text(r.params), r.status, detail))
    widths = [max(len(row[c]) for row in rows) for c in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row[:4], widths)) + ("  " + row[4] if row[4] else "")
             for row in rows]
    lines = [ln.rstrip() for ln in lines]
    lines.append(f"summary: pass={summary[PASS]} fail={summary[FAIL]} skipped={summary[SKIPPED]}")
    return "\n".join(lines) + "\n"


def dump_seeds(config: VerificationConfig, directory: str | Path) -> list[Path]:
    """Write the product seeds G_1..G_k of each k, one series per line of coefficients."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for k in config.k_values:
        path = d / f"seeds_k{k}_N{config.order}.txt"
        lines = [" ".join(map(str, engine.product_G(k, i, config.order).coeffs)) for i in range(1, k + 1)]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(path)
    return written


def series_command(k: int, s: int, N: int) -> str:
    """Show G_s from the recursion and from the closed form, and whether they agree."""
    idx = GordonIndex.from_linear(k, s)
    seq = engine.gordon_sequence(k, idx.j, N)
    rec = seq[s]
    closed = engine.closed_form_H(k, idx.j, idx.i, N)
    label = "product (seed)" if idx.j == 0 else "recursion"
    rep = compare(rec, closed)
    if rep:
        status = "agree"
        if idx.j == 0:
            status += " (j=0: the recursion entry is the product itself)"
    else:
        status = f"DISAGREE at q^{rep.witness.exponent}: {rep.witness.lhs} vs {rep.witness.rhs}"
    return "\n".join([
        f"G_{s}  (k={k}, j={idx.j}, i={idx.i}, N={N})",
        f"  {label + ':':<16} {render_series(rec)}",
        f"  {'closed form:':<16} {render_series(closed)}",
        f"  {'status:':<16} {status}",
    ]) + "\n"
