"""Benchmark engine: ratio sweeps, scaling runs, kernel audits, parameter studies.

Every experiment produces ``RunRecord`` rows that serialize to a fixed CSV
schema (see ``CSV_HEADER``).  Timing uses the monotonic ``perf_counter``
clock around the operation loops only — data generation is never timed —
and long runs are cut off cooperatively after a per-run timeout, with the
row flagged instead of the experiment failing.

Interleaved workloads alternate insert and containment-query blocks at a
fine grain so that a 1:1 ratio really does alternate the two operation
kinds throughout the run; queries are drawn from the same distribution as
the inserted points, with an independently salted seed.
"""

from __future__ import annotations

import csv
import os
import random
import tempfile
import time
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

from .datagen import GENERATOR_KINDS, GeneratorSpec, generate, load_points
from .logmethod import STRUCTURE_NAMES, make_structure
from .oracles import (
    oracle_contains,
    oracle_hull_cycle,
    oracle_is_tangent_vertex,
    oracle_line_clip,
    oracle_line_hits_hull,
)
from .predicates import KernelKind, Point, PredicateError

CSV_HEADER = (
    "experiment",
    "structure",
    "kernel",
    "dataset",
    "seed",
    "repeat",
    "n_insert",
    "n_query",
    "time_insert_s",
    "time_query_s",
    "hull_size",
    "peak_bytes",
    "predicate_errors",
    "timed_out",
)

DEFAULT_TIMEOUT_SECONDS = 10.0
DEFAULT_REPEATS = 5

# Operations per block when interleaving inserts with queries; also the
# granularity of the cooperative timeout check.
_BLOCK = 64

# Salt mixed into the data seed to derive the probe-stream seed, so the
# query points are independent of (but reproducible from) the inserts.
_PROBE_SALT = 0x9E3779B97F4A7C15

Dataset = Union[GeneratorSpec, str]


@dataclass(frozen=True)
class ExperimentConfig:
    """One benchmark setup: structure, kernel, data, and workload shape."""

    structure: str
    kernel: KernelKind
    dataset: Dataset
    n_insert: int
    n_query: int
    seed: int = 0
    repeats: int = DEFAULT_REPEATS
    base_capacity: int = 512
    node_bytes: int = 1024
    timeout_seconds: float = DEFAULT_TIMEOUT_SECONDS

    def __post_init__(self) -> None:
        if self.structure not in STRUCTURE_NAMES:
            raise ValueError(
                f"unknown structure {self.structure!r}; expected one of {STRUCTURE_NAMES}"
            )
        if not isinstance(self.kernel, KernelKind):
            object.__setattr__(self, "kernel", KernelKind(self.kernel))
        if self.n_insert < 0 or self.n_query < 0:
            raise ValueError("operation counts must be nonnegative")
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")
        if self.timeout_seconds <= 0:
            raise ValueError("timeout must be positive")


@dataclass(frozen=True)
class RunRecord:
    """One CSV row: the config echo plus this run's measurements."""

    experiment: str
    structure: str
    kernel: str
    dataset: str
    seed: int
    repeat: int
    n_insert: int
    n_query: int
    time_insert_s: Optional[float]
    time_query_s: Optional[float]
    hull_size: Optional[int]
    peak_bytes: Optional[int]
    predicate_errors: int
    timed_out: bool

    def to_csv_row(self) -> list[str]:
        def num(v):
            return "" if v is None else repr(v)

        return [
            self.experiment,
            self.structure,
            self.kernel,
            self.dataset,
            str(self.seed),
            str(self.repeat),
            str(self.n_insert),
            str(self.n_query),
            num(self.time_insert_s),
            num(self.time_query_s),
            "" if self.hull_size is None else str(self.hull_size),
            "" if self.peak_bytes is None else str(self.peak_bytes),
            str(self.predicate_errors),
            "1" if self.timed_out else "0",
        ]

    @staticmethod
    def from_csv_row(row: dict[str, str]) -> "RunRecord":
        def opt_float(v: str) -> Optional[float]:
            return None if v == "" else float(v)

        def opt_int(v: str) -> Optional[int]:
            return None if v == "" else int(v)

        return RunRecord(
            experiment=row["experiment"],
            structure=row["structure"],
            kernel=row["kernel"],
            dataset=row["dataset"],
            seed=int(row["seed"]),
            repeat=int(row["repeat"]),
            n_insert=int(row["n_insert"]),
            n_query=int(row["n_query"]),
            time_insert_s=opt_float(row["time_insert_s"]),
            time_query_s=opt_float(row["time_query_s"]),
            hull_size=opt_int(row["hull_size"]),
            peak_bytes=opt_int(row["peak_bytes"]),
            predicate_errors=int(row["predicate_errors"]),
            timed_out=row["timed_out"] == "1",
        )


# ---------------------------------------------------------------------------
# Data plumbing
# ---------------------------------------------------------------------------


def probe_seed(seed: int) -> int:
    """Derive the query-stream seed from the insert-stream seed."""
    return (seed ^ _PROBE_SALT) % 2**64


def dataset_label(dataset: Dataset) -> str:
    if isinstance(dataset, GeneratorSpec):
        return dataset.kind
    return os.path.basename(str(dataset))


def _insert_points(dataset: Dataset, n: int, seed: int) -> list[Point]:
    if isinstance(dataset, GeneratorSpec):
        return generate(replace(dataset, n=n, seed=seed))
    points = load_points(dataset)
    if len(points) < n:
        raise ValueError(
            f"dataset {dataset!r} holds {len(points)} points but {n} were requested"
        )
    return points[:n]


def _probe_points(dataset: Dataset, n: int, seed: int) -> list[Point]:
    if isinstance(dataset, GeneratorSpec):
        return generate(replace(dataset, n=n, seed=probe_seed(seed)))
    points = load_points(dataset)
    if not points:
        return []
    rng = random.Random(probe_seed(seed))
    return [points[rng.randrange(len(points))] for _ in range(n)]


def _build_structure(cfg: ExperimentConfig, kernel: Optional[KernelKind] = None):
    return make_structure(
        cfg.structure,
        kernel if kernel is not None else cfg.kernel,
        base_capacity=cfg.base_capacity,
        node_bytes=cfg.node_bytes,
    )


# ---------------------------------------------------------------------------
# Run execution
# ---------------------------------------------------------------------------


@dataclass
class _RunOutcome:
    time_insert_s: float
    time_query_s: float
    hull_size: int
    peak_bytes: int
    predicate_errors: int
    timed_out: bool


def _execute_interleaved(
    structure,
    insert_pts: Sequence[Point],
    probe_pts: Sequence[Point],
    timeout_seconds: float,
) -> _RunOutcome:
    """Alternate insert and containment-query blocks; cooperative timeout."""
    clock = time.perf_counter
    n_ins, n_q = len(insert_pts), len(probe_pts)
    done_ins = done_q = 0
    t_ins = t_q = 0.0
    errors = 0
    timed_out = False
    while done_ins < n_ins or done_q < n_q:
        block = min(_BLOCK, n_ins - done_ins)
        if block:
            start = clock()
            for p in insert_pts[done_ins : done_ins + block]:
                try:
                    structure.insert(p)
                except PredicateError:
                    errors += 1
            t_ins += clock() - start
            done_ins += block
        # Keep queries proportional to insert progress.
        target = n_q if done_ins >= n_ins else (n_q * done_ins) // n_ins
        if target > done_q:
            start = clock()
            for q in probe_pts[done_q:target]:
                try:
                    structure.contains(q)
                except PredicateError:
                    errors += 1
            t_q += clock() - start
            done_q = target
        if t_ins + t_q > timeout_seconds:
            timed_out = True
            break
    return _RunOutcome(
        time_insert_s=t_ins,
        time_query_s=t_q,
        hull_size=structure.hull_size(),
        peak_bytes=structure.peak_bytes(),
        predicate_errors=errors,
        timed_out=timed_out,
    )


def _record(
    experiment: str,
    cfg: ExperimentConfig,
    structure_name: str,
    kernel: KernelKind,
    repeat: int,
    seed: int,
    n_insert: int,
    n_query: int,
    outcome: _RunOutcome,
) -> RunRecord:
    return RunRecord(
        experiment=experiment,
        structure=structure_name,
        kernel=kernel.value,
        dataset=dataset_label(cfg.dataset),
        seed=seed,
        repeat=repeat,
        n_insert=n_insert,
        n_query=n_query,
        time_insert_s=None if outcome.timed_out else outcome.time_insert_s,
        time_query_s=None if outcome.timed_out else outcome.time_query_s,
        hull_size=outcome.hull_size,
        peak_bytes=outcome.peak_bytes,
        predicate_errors=outcome.predicate_errors,
        timed_out=outcome.timed_out,
    )


# ---------------------------------------------------------------------------
# Experiments
# ---------------------------------------------------------------------------


def run_ratio_sweep(
    cfg: ExperimentConfig,
    structures: Optional[Sequence[str]] = None,
) -> list[RunRecord]:
    """Insert/query mix at the configured counts, one row per (structure, repeat)."""
    names = tuple(structures) if structures else (cfg.structure,)
    records = []
    for name in names:
        run_cfg = replace(cfg, structure=name)
        for r in range(cfg.repeats):
            seed = cfg.seed + r
            inserts = _insert_points(cfg.dataset, cfg.n_insert, seed)
            probes = _probe_points(cfg.dataset, cfg.n_query, seed)
            structure = _build_structure(run_cfg)
            outcome = _execute_interleaved(
                structure, inserts, probes, cfg.timeout_seconds
            )
            records.append(
                _record("ratio", run_cfg, name, cfg.kernel, r, seed,
                        cfg.n_insert, cfg.n_query, outcome)
            )
    return records


def run_scaling(
    cfg: ExperimentConfig,
    n_list: Sequence[int],
    structures: Optional[Sequence[str]] = None,
) -> list[RunRecord]:
    """One interleaved run per (n, structure, repeat); n_list must ascend."""
    if list(n_list) != sorted(n_list) or any(n < 0 for n in n_list):
        raise ValueError("n_list must be nonnegative and ascending")
    names = tuple(structures) if structures else (cfg.structure,)
    # Queries scale with inserts at the configured proportion.
    ratio = (cfg.n_query / cfg.n_insert) if cfg.n_insert else 0.0
    records = []
    for n in n_list:
        n_query = int(round(n * ratio))
        for name in names:
            run_cfg = replace(cfg, structure=name)
            for r in range(cfg.repeats):
                seed = cfg.seed + r
                inserts = _insert_points(cfg.dataset, n, seed)
                probes = _probe_points(cfg.dataset, n_query, seed)
                structure = _build_structure(run_cfg)
                outcome = _execute_interleaved(
                    structure, inserts, probes, cfg.timeout_seconds
                )
                records.append(
                    _record("scale", run_cfg, name, cfg.kernel, r, seed,
                            n, n_query, outcome)
                )
    return records


def run_kernel_audit(
    cfg: ExperimentConfig,
    kernels: Sequence[KernelKind] = (
        KernelKind.NAIVE,
        KernelKind.QUADRATIC,
        KernelKind.EXACT,
    ),
) -> list[RunRecord]:
    """Per kernel: a timed solo run, then an untimed shadow comparison.

    The shadow pass replays the same inserts side by side with an exact-
    kernel twin and compares each insert's outcome; a run counts as
    errored (predicate_errors = 1) on its first divergence or predicate
    exception.  The mean of that flag over repeats is the per-kernel
    error fraction.
    """
    records = []
    for kernel in kernels:
        for r in range(cfg.repeats):
            seed = cfg.seed + r
            inserts = _insert_points(cfg.dataset, cfg.n_insert, seed)
            structure = _build_structure(cfg, kernel)
            outcome = _execute_interleaved(
                structure, inserts, (), cfg.timeout_seconds
            )
            errored = outcome.predicate_errors > 0
            if kernel is not KernelKind.EXACT and not errored:
                errored = not _shadow_agrees(cfg, kernel, inserts)
            outcome = replace(outcome, predicate_errors=1 if errored else 0)
            records.append(
                _record("kernels", cfg, cfg.structure, kernel, r, seed,
                        cfg.n_insert, 0, outcome)
            )
    return records


def _shadow_agrees(
    cfg: ExperimentConfig, kernel: KernelKind, inserts: Sequence[Point]
) -> bool:
    """Replay inserts under `kernel` and exact twins; True iff no divergence.

    Identical per-insert outcomes (admitted flag plus pop counts on both
    chains) force identical hull states, so comparing outcomes step by
    step detects the first divergence exactly.
    """
    test = _build_structure(cfg, kernel)
    truth = _build_structure(cfg, KernelKind.EXACT)
    for p in inserts:
        try:
            got = test.insert(p)
        except PredicateError:
            return False
        want = truth.insert(p)
        if got != want:
            return False
    return test.vertices() == truth.vertices()


def run_param_study(
    cfg: ExperimentConfig,
    capacities: Sequence[int],
    node_byte_list: Sequence[int],
) -> list[RunRecord]:
    """Grid over bucket capacity (log structure) and tree node size (btree).

    Runs each parameter value on box and circle data with the configured
    insert/query counts; the varying value is encoded in the experiment
    column (``params-cap{c}`` / ``params-nb{b}``) since the CSV schema is
    fixed.
    """
    if not capacities or not node_byte_list:
        raise ValueError("parameter lists must be non-empty")
    datasets = [
        GeneratorSpec("box", cfg.n_insert, cfg.seed),
        GeneratorSpec("circle", cfg.n_insert, cfg.seed),
    ]
    cap_structure = cfg.structure if cfg.structure.startswith("log-") else "log-linear"
    records = []
    for dataset in datasets:
        for capacity in capacities:
            sub = replace(
                cfg, structure=cap_structure, dataset=dataset, base_capacity=capacity
            )
            for rec in run_ratio_sweep(sub):
                records.append(replace(rec, experiment=f"params-cap{capacity}"))
        for node_bytes in node_byte_list:
            sub = replace(
                cfg, structure="btree", dataset=dataset, node_bytes=node_bytes
            )
            for rec in run_ratio_sweep(sub):
                records.append(replace(rec, experiment=f"params-nb{node_bytes}"))
    return records


# ---------------------------------------------------------------------------
# Verification suite (oracle equivalence, callable from the CLI)
# ---------------------------------------------------------------------------


def run_verification(
    n: int = 512,
    seeds: Sequence[int] = (0, 1, 2),
    structures: Sequence[str] = STRUCTURE_NAMES,
    kernel: KernelKind = KernelKind.EXACT,
    probes_per_case: int = 50,
) -> list[str]:
    """Cross-check every structure against the brute-force oracles.

    Returns a list of human-readable failure descriptions (empty = pass).
    Covers vertices() plus all five queries, including the combined forms
    on the bucket structures.
    """
    failures: list[str] = []
    for kind in GENERATOR_KINDS:
        for seed in seeds:
            pts = generate(GeneratorSpec(kind, n, seed))
            hull = oracle_hull_cycle(pts)
            rng = random.Random(probe_seed(seed))
            probes = _verify_probes(rng, pts, probes_per_case)
            for name in structures:
                tag = f"{kind}/seed={seed}/{name}"
                s = make_structure(name, kernel, base_capacity=64)
                for p in pts:
                    s.insert(p)
                if s.vertices() != hull:
                    failures.append(f"{tag}: vertices() differ from oracle hull")
                    continue
                failures.extend(
                    f"{tag}: {msg}" for msg in _verify_queries(s, pts, hull, probes)
                )
    return failures


def _verify_probes(rng: random.Random, pts: Sequence[Point], count: int):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lo = (min(xs) - 10.0, min(ys) - 10.0)
    hi = (max(xs) + 10.0, max(ys) + 10.0)
    points = [
        (rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1])) for _ in range(count)
    ]
    points.extend(rng.choice(pts) for _ in range(count // 4))
    lines = []
    while len(lines) < count:
        a = (rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1]))
        b = (rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1]))
        if a != b:
            lines.append((a, b))
    dirs = []
    while len(dirs) < count // 2:
        d = (rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        if d != (0.0, 0.0):
            dirs.append(d)
    return points, lines, dirs


def _verify_queries(s, pts, hull, probes) -> list[str]:
    from fractions import Fraction

    points, lines, dirs = probes
    out = []
    for q in points:
        if s.contains(q) != oracle_contains(hull, q):
            out.append(f"contains({q!r}) diverges from oracle")
    for d in dirs:
        got = s.extreme_point(d)
        want_val = max(
            Fraction(d[0]) * Fraction(v[0]) + Fraction(d[1]) * Fraction(v[1])
            for v in hull
        )
        got_val = Fraction(d[0]) * Fraction(got[0]) + Fraction(d[1]) * Fraction(got[1])
        if got_val != want_val or got not in hull:
            out.append(f"extreme_point({d!r}) is not an oracle maximizer")
    for l in lines:
        if s.line_hits_hull(l) != oracle_line_hits_hull(hull, l):
            out.append(f"line_hits_hull({l!r}) diverges from oracle")
        got = s.line_intersect(l)
        want = oracle_line_clip(hull, l)
        want_f = (
            None
            if want is None
            else tuple((float(p[0]), float(p[1])) for p in want)
        )
        if got != want_f:
            out.append(f"line_intersect({l!r}) diverges from oracle")
    for q in points:
        if oracle_contains(hull, q):
            continue
        left, right = s.tangents_from_point(q)
        if not (
            oracle_is_tangent_vertex(hull, q, left)
            and oracle_is_tangent_vertex(hull, q, right)
        ):
            out.append(f"tangents_from_point({q!r}) returned non-tangent vertices")
    return out


# ---------------------------------------------------------------------------
# CSV I/O
# ---------------------------------------------------------------------------


def write_csv(records: Sequence[RunRecord], path: Union[str, os.PathLike]) -> None:
    """Write rows atomically: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".csv.tmp")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for rec in records:
                writer.writerow(rec.to_csv_row())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_csv(path: Union[str, os.PathLike]) -> list[RunRecord]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected CSV header {reader.fieldnames!r}")
        return [RunRecord.from_csv_row(row) for row in reader]
