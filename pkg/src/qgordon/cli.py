"""Command line entry point: ``qgordon verify|series|hmatrix|partitions``."""

from __future__ import annotations

import argparse
import sys

from . import matrices, partitions, verifier
from .errors import QSeriesError

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _k_list(values: list[str] | None) -> tuple[int, ...]:
    if not values:
        return verifier.VerificationConfig.k_values
    out = []
    for v in values:
        out.extend(int(x) for x in v.split(",") if x)
    return tuple(out)


def _jobs(value: str) -> int | None:
    if value == "auto":
        return None
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgordon", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--k", action="append", metavar="K[,K...]", help="values of k (repeatable; default 2,3,4,5)")
    v.add_argument("--order", type=int, default=200, help="truncation order N (default 200)")
    v.add_argument("--jmax", type=int, default=20, help="recursion depth (default 20)")
    v.add_argument("--suite", action="append", choices=verifier.SUITES, help="suite to run (repeatable; default all)")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--strict", action="store_true", help="treat skipped checks as failures")
    v.add_argument("--jobs", type=_jobs, default=1, help="worker processes, or 'auto'")
    v.add_argument("--oracle-order", type=int, default=60, help="weight bound for partition enumeration")
    v.add_argument("--oracle-jmax", type=int, default=8, help="depth bound for partition checks")
    v.add_argument("--headroom", action="store_true",
                   help="seed the recursion high enough that no entry loses precision below --order")
    v.add_argument("--seed-dump-dir", help="also write the product seeds G_1..G_k to this directory")

    s = sub.add_parser("series", help="show G_s by recursion and by closed form")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--order", type=int, default=20)

    h = sub.add_parser("hmatrix", help="print h^(j), A_(j) or B_(j)")
    h.add_argument("--k", type=int, required=True)
    h.add_argument("--j", type=int, required=True)
    h.add_argument("--which", choices=("h", "A", "B"), default="h")

    p = sub.add_parser("partitions", help="list constrained partitions of m, one per line")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-ones", type=int)
    p.add_argument("--min-part-exclusive", type=int, help="all parts must exceed this")
    p.add_argument("--max-part", type=int)
    p.add_argument("--designated-part", type=int)
    p.add_argument("--exact-multiplicity", type=int)
    p.add_argument("--max-multiplicity", type=int)
    p.add_argument("--count", action="store_true", help="print only the number of partitions")
    return parser


def _verify(args) -> int:
    config = verifier.VerificationConfig(
        k_values=_k_list(args.k),
        order=args.order,
        jmax=args.jmax,
        suites=tuple(dict.fromkeys(args.suite)) if args.suite else verifier.SUITES,
        format=args.format,
        jobs=args.jobs,
        strict=args.strict,
        oracle_order=args.oracle_order,
        oracle_jmax=args.oracle_jmax,
        headroom=args.headroom,
    )
    config.validate()
    if args.seed_dump_dir:
        verifier.dump_seeds(config, args.seed_dump_dir)
    records = verifier.run_verification(config)
    sys.stdout.write(verifier.render_report(records, config.format, config))
    return verifier.exit_status(records, config.strict)


def _hmatrix(args) -> int:
    if args.which == "h":
        m = matrices.h_matrix(args.k, args.j)
    elif args.which == "A":
        m = matrices.a_matrix(args.k, args.j)
    else:
        m = matrices.b_matrix(args.k, args.j)
    print(m)
    return EXIT_OK


def _partitions(args) -> int:
    c = partitions.GordonConstraint(
        args.k,
        max_ones=args.max_ones,
        min_part_exclusive=args.min_part_exclusive,
        max_part=args.max_part,
        designated_part=args.designated_part,
        exact_multiplicity=args.exact_multiplicity,
        max_multiplicity=args.max_multiplicity,
    )
    found = partitions.enumerate_partitions(args.m, c)
    if args.count:
        print(len(found))
    else:
        for p in found:
            print(p)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        if args.command == "series":
            sys.stdout.write(verifier.series_command(args.k, args.s, args.order))
            return EXIT_OK
        if args.command == "hmatrix":
            return _hmatrix(args)
        return _partitions(args)
    except (verifier.ConfigError, QSeriesError, ValueError) as exc:
        print(f"qgordon: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
