"""Command-line interface: data generation, verification, and benchmarks.

Subcommands
-----------
* ``gen``            — write a synthetic point file.
* ``verify``         — cross-check every structure against brute-force oracles.
* ``bench ratio``    — insert/query mix at a fixed operation ratio.
* ``bench scale``    — the same workload swept over a list of sizes.
* ``bench params``   — bucket-capacity and tree-node-size grids.
* ``bench kernels``  — timed runs per kernel with divergence shadowing.
* ``audit``          — ``bench kernels`` with audit-oriented defaults.

All benchmark subcommands write one atomically-replaced CSV (see
``bench.CSV_HEADER`` for the schema) and print a one-line summary.
Runs always execute sequentially; ``--sequential`` records that intent
explicitly for timing-comparison runs.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bench import (
    DEFAULT_REPEATS,
    DEFAULT_TIMEOUT_SECONDS,
    ExperimentConfig,
    run_kernel_audit,
    run_param_study,
    run_ratio_sweep,
    run_scaling,
    run_verification,
    write_csv,
)
from .datagen import GENERATOR_KINDS, GeneratorSpec, PointFileError, dump_points, generate
from .logmethod import STRUCTURE_NAMES
from .predicates import KernelKind

_DEFAULT_CAPACITIES = (8, 64, 512, 4096)
_DEFAULT_NODE_BYTES = (16, 256, 1024, 4096)


def _parse_ints(value: str) -> list[int]:
    try:
        out = [int(part) for part in value.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {value!r}")
    if not out:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return out


def _parse_ratio(value: str) -> tuple[int, int]:
    parts = value.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"ratio must look like INSERTS:QUERIES, got {value!r}"
        )
    try:
        ins, q = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"ratio parts must be integers: {value!r}")
    if ins < 0 or q < 0 or (ins == 0 and q == 0):
        raise argparse.ArgumentTypeError(f"ratio parts must be nonnegative, not both zero: {value!r}")
    return ins, q


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--structure",
        default="all",
        choices=STRUCTURE_NAMES + ("all",),
        help="hull structure to run (default: all of them)",
    )
    p.add_argument(
        "--kernel",
        default="exact",
        choices=[k.value for k in KernelKind],
        help="predicate kernel (default: exact)",
    )
    p.add_argument(
        "--dataset",
        default="box",
        help="generator kind (box/bell/disk/circle) or a point-file path",
    )
    p.add_argument(
        "--n",
        type=_parse_ints,
        default=[4096],
        help="operation count; comma-separated list for `bench scale`",
    )
    p.add_argument(
        "--ratio",
        type=_parse_ratio,
        default=(1, 1),
        help="INSERTS:QUERIES mix, e.g. 1:1 or 0:1 (default 1:1)",
    )
    p.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    p.add_argument(
        "--repeats",
        type=int,
        default=None,
        help=f"independent repeats per configuration (default {DEFAULT_REPEATS})",
    )
    p.add_argument(
        "--bucket-size",
        type=_parse_ints,
        default=[512],
        help="bucket base capacity; comma-separated list for `bench params`",
    )
    p.add_argument(
        "--btree-node-bytes",
        type=_parse_ints,
        default=[1024],
        help="tree node byte size; comma-separated list for `bench params`",
    )
    p.add_argument(
        "--timeout",
        type=float,
        default=DEFAULT_TIMEOUT_SECONDS,
        help=f"per-run cutoff in seconds (default {DEFAULT_TIMEOUT_SECONDS})",
    )
    p.add_argument("--out", default=None, help="output CSV path (benchmarks) or point file (gen)")
    p.add_argument(
        "--sequential",
        action="store_true",
        help="pin sequential execution for timing comparability (runs are sequential either way)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inchull",
        description="Insertion-only planar convex hulls: generators, verification, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="emit a synthetic point file")
    _common_flags(p_gen)

    p_verify = sub.add_parser("verify", help="oracle-equivalence property suite")
    _common_flags(p_verify)

    p_bench = sub.add_parser("bench", help="run an experiment family")
    bench_sub = p_bench.add_subparsers(dest="experiment", required=True)
    for name, help_text in (
        ("ratio", "insert/query mix at a fixed ratio"),
        ("scale", "sweep the workload size (give --n as a comma list)"),
        ("params", "bucket-capacity and node-size grids"),
        ("kernels", "per-kernel timing with divergence shadowing"),
    ):
        p = bench_sub.add_parser(name, help=help_text)
        _common_flags(p)

    p_audit = sub.add_parser("audit", help="kernel audit (bench kernels with audit defaults)")
    _common_flags(p_audit)

    return parser


def _single_n(args: argparse.Namespace) -> int:
    if len(args.n) != 1:
        raise ValueError("--n takes a single value for this subcommand")
    return args.n[0]


def _dataset(args: argparse.Namespace, n: int):
    if args.dataset in GENERATOR_KINDS:
        return GeneratorSpec(args.dataset, n, args.seed)
    return args.dataset


def _structures(args: argparse.Namespace) -> tuple[str, ...]:
    if args.structure == "all":
        return STRUCTURE_NAMES
    return (args.structure,)


def _split_ratio(n_total: int, ratio: tuple[int, int]) -> tuple[int, int]:
    ins, q = ratio
    n_insert = n_total * ins // (ins + q)
    return n_insert, n_total - n_insert


def _config(args: argparse.Namespace, structure: str, n_insert: int, n_query: int,
            repeats_default: int = DEFAULT_REPEATS) -> ExperimentConfig:
    return ExperimentConfig(
        structure=structure,
        kernel=KernelKind(args.kernel),
        dataset=_dataset(args, n_insert),
        n_insert=n_insert,
        n_query=n_query,
        seed=args.seed,
        repeats=args.repeats if args.repeats is not None else repeats_default,
        base_capacity=args.bucket_size[0],
        node_bytes=args.btree_node_bytes[0],
        timeout_seconds=args.timeout,
    )


def _require_out(args: argparse.Namespace) -> str:
    if not args.out:
        raise ValueError("--out is required for this subcommand")
    return args.out


def _cmd_gen(args: argparse.Namespace) -> int:
    out = _require_out(args)
    if args.dataset not in GENERATOR_KINDS:
        raise ValueError(
            f"gen needs a generator kind ({', '.join(GENERATOR_KINDS)}), got {args.dataset!r}"
        )
    n = _single_n(args)
    points = generate(GeneratorSpec(args.dataset, n, args.seed))
    dump_points(points, out)
    print(f"wrote {len(points)} {args.dataset} points to {out}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    repeats = args.repeats if args.repeats is not None else 3
    failures = run_verification(
        n=_single_n(args),
        seeds=range(args.seed, args.seed + repeats),
        structures=_structures(args),
        kernel=KernelKind(args.kernel),
    )
    for line in failures:
        print(f"FAIL {line}", file=sys.stderr)
    if failures:
        print(f"verification failed: {len(failures)} divergences", file=sys.stderr)
        return 1
    print("verification passed: all structures match the oracles")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    out = _require_out(args)
    if args.experiment == "ratio":
        n_insert, n_query = _split_ratio(_single_n(args), args.ratio)
        cfg = _config(args, _structures(args)[0], n_insert, n_query)
        records = run_ratio_sweep(cfg, structures=_structures(args))
    elif args.experiment == "scale":
        ins, q = args.ratio
        cfg = _config(args, _structures(args)[0], ins, q)
        records = run_scaling(cfg, sorted(args.n), structures=_structures(args))
    elif args.experiment == "params":
        n_insert, n_query = _split_ratio(_single_n(args), args.ratio)
        structure = args.structure if args.structure != "all" else "log-linear"
        cfg = _config(args, structure, n_insert, n_query)
        records = run_param_study(cfg, args.bucket_size, args.btree_node_bytes)
    else:  # kernels
        records = _audit_records(args, repeats_default=DEFAULT_REPEATS)
    write_csv(records, out)
    timed_out = sum(r.timed_out for r in records)
    print(f"wrote {len(records)} rows to {out}" +
          (f" ({timed_out} timed out)" if timed_out else ""))
    return 0


def _audit_records(args: argparse.Namespace, repeats_default: int):
    structure = args.structure if args.structure != "all" else "vector"
    n = _single_n(args)
    cfg = _config(args, structure, n, 0, repeats_default=repeats_default)
    return run_kernel_audit(cfg)


def _cmd_audit(args: argparse.Namespace) -> int:
    out = _require_out(args)
    records = _audit_records(args, repeats_default=10)
    write_csv(records, out)
    by_kernel: dict[str, list[int]] = {}
    for rec in records:
        by_kernel.setdefault(rec.kernel, []).append(rec.predicate_errors)
    for kernel, flags in sorted(by_kernel.items()):
        print(f"{kernel}: error fraction {sum(flags)}/{len(flags)}")
    print(f"wrote {len(records)} rows to {out}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_audit(args)
    except (ValueError, OSError, PointFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
