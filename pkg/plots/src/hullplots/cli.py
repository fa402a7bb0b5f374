"""Render benchmark CSVs into figures: `plot <figure_kind> <csv> -o <image>`.

The CSV contract is the benchmark harness's fixed schema (``CSV_HEADER``);
this package deliberately has no code dependency on the harness — the CSV
file is the entire interface.  Four figure kinds are supported:

* ``ratio``   — clustered bars of mean runtime per structure, grouped by
  insert:query mix.
* ``scaling`` — runtime curves over workload size, both axes logarithmic.
* ``memory``  — one bar of mean peak bytes per structure, annotated with
  the ratio to the smallest (the baseline).
* ``kernels`` — per-kernel slowdown bars relative to the quadratic kernel,
  grouped by structure, annotated with error fractions when present.

Repeats are aggregated by mean.  Rows whose run timed out carry no timing
fields and are ignored by time-based figures.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

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

FIGURE_KINDS = ("ratio", "scaling", "memory", "kernels")


class SchemaError(ValueError):
    """The CSV does not match the benchmark schema."""


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    figure_kind: str
    output_path: str

    def __post_init__(self) -> None:
        if self.figure_kind not in FIGURE_KINDS:
            raise ValueError(
                f"unknown figure kind {self.figure_kind!r}; expected one of {FIGURE_KINDS}"
            )


# ---------------------------------------------------------------------------
# CSV loading and validation
# ---------------------------------------------------------------------------


def _validate_header(fields: Optional[Sequence[str]], path: str) -> None:
    if fields is None:
        raise SchemaError(f"{path}: empty file, no header row")
    got = tuple(fields)
    if got == CSV_HEADER:
        return
    for i, want in enumerate(CSV_HEADER):
        if i >= len(got):
            raise SchemaError(f"{path}: missing column {want!r}")
        if got[i] != want:
            raise SchemaError(
                f"{path}: unexpected column {got[i]!r} where {want!r} was expected"
            )
    extra = got[len(CSV_HEADER) :]
    raise SchemaError(f"{path}: unexpected extra column {extra[0]!r}")


def load_rows(path: str) -> list[dict]:
    """Parse and type-check the CSV; raises SchemaError for any violation."""
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        _validate_header(reader.fieldnames, path)
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            try:
                rows.append(_typed_row(raw))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{path}: line {lineno}: {exc}") from None
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _typed_row(raw: dict) -> dict:
    def opt_float(name: str) -> Optional[float]:
        v = raw[name]
        if v == "" or v is None:
            return None
        return float(v)

    def req_int(name: str) -> int:
        v = raw[name]
        if v is None or v == "":
            raise ValueError(f"column {name!r} is empty")
        return int(v)

    if any(v is None for v in raw.values()):
        raise ValueError("short row")
    return {
        "experiment": raw["experiment"],
        "structure": raw["structure"],
        "kernel": raw["kernel"],
        "dataset": raw["dataset"],
        "seed": req_int("seed"),
        "repeat": req_int("repeat"),
        "n_insert": req_int("n_insert"),
        "n_query": req_int("n_query"),
        "time_insert_s": opt_float("time_insert_s"),
        "time_query_s": opt_float("time_query_s"),
        "hull_size": None if raw["hull_size"] == "" else int(raw["hull_size"]),
        "peak_bytes": None if raw["peak_bytes"] == "" else int(raw["peak_bytes"]),
        "predicate_errors": req_int("predicate_errors"),
        "timed_out": raw["timed_out"] == "1",
    }


def _timed_rows(rows: list[dict]) -> list[dict]:
    out = [
        r
        for r in rows
        if not r["timed_out"]
        and r["time_insert_s"] is not None
        and r["time_query_s"] is not None
    ]
    if not out:
        raise SchemaError("every row timed out; nothing to plot")
    return out


def _total_time(r: dict) -> float:
    return r["time_insert_s"] + r["time_query_s"]


def _mean_by(rows: list[dict], key_fn, value_fn) -> dict:
    groups: dict = {}
    for r in rows:
        groups.setdefault(key_fn(r), []).append(value_fn(r))
    return {k: statistics.fmean(v) for k, v in groups.items()}


# ---------------------------------------------------------------------------
# Renderers (each returns the plotted series for testability)
# ---------------------------------------------------------------------------


def _render_ratio(rows: list[dict], ax) -> dict:
    rows = _timed_rows(rows)
    means = _mean_by(
        rows,
        lambda r: (f"{r['n_insert']}:{r['n_query']}", r["structure"]),
        _total_time,
    )
    ratios = sorted({k[0] for k in means})
    structures = sorted({k[1] for k in means})
    width = 1.0 / (len(structures) + 1)
    series = {}
    for j, s in enumerate(structures):
        xs = [i + j * width for i in range(len(ratios))]
        ys = [means.get((ratio, s), 0.0) for ratio in ratios]
        ax.bar(xs, ys, width=width, label=s)
        series[s] = dict(zip(ratios, ys))
    ax.set_xticks([i + width * (len(structures) - 1) / 2 for i in range(len(ratios))])
    ax.set_xticklabels(ratios)
    ax.set_xlabel("insert:query mix")
    ax.set_ylabel("mean runtime (s)")
    ax.set_title("Runtime by operation mix")
    ax.legend(fontsize="small")
    return {"kind": "ratio", "series": series}


def _render_scaling(rows: list[dict], ax) -> dict:
    rows = _timed_rows(rows)
    means = _mean_by(
        rows, lambda r: (r["structure"], r["n_insert"]), _total_time
    )
    structures = sorted({k[0] for k in means})
    series = {}
    for s in structures:
        ns = sorted(n for (s2, n) in means if s2 == s)
        ys = [means[(s, n)] for n in ns]
        ax.plot(ns, ys, marker="o", label=s)
        series[s] = dict(zip(ns, ys))
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("operations")
    ax.set_ylabel("mean runtime (s)")
    ax.set_title("Runtime scaling")
    ax.legend(fontsize="small")
    return {"kind": "scaling", "series": series}


def _render_memory(rows: list[dict], ax) -> dict:
    usable = [r for r in rows if r["peak_bytes"] is not None]
    if not usable:
        raise SchemaError("no rows carry peak_bytes; nothing to plot")
    means = _mean_by(usable, lambda r: r["structure"], lambda r: r["peak_bytes"])
    structures = sorted(means)
    baseline_name = min(means, key=means.get)
    baseline = means[baseline_name]
    ys = [means[s] for s in structures]
    ax.bar(range(len(structures)), ys)
    for i, s in enumerate(structures):
        note = "baseline" if s == baseline_name else f"{means[s] / baseline:.1f}x"
        ax.annotate(
            note,
            (i, means[s]),
            ha="center",
            va="bottom",
            fontsize="small",
        )
    ax.set_xticks(range(len(structures)))
    ax.set_xticklabels(structures, rotation=30, ha="right")
    ax.set_ylabel("mean peak bytes")
    ax.set_title(f"Peak memory (baseline: {baseline_name})")
    return {"kind": "memory", "bars": means, "baseline": baseline_name}


def _render_kernels(rows: list[dict], ax) -> dict:
    rows = _timed_rows(rows)
    means = _mean_by(
        rows, lambda r: (r["structure"], r["kernel"]), _total_time
    )
    errors = _mean_by(
        rows,
        lambda r: (r["structure"], r["kernel"]),
        lambda r: float(r["predicate_errors"] > 0),
    )
    structures = sorted({k[0] for k in means})
    kernels = sorted({k[1] for k in means})
    slowdowns: dict = {}
    for s in structures:
        base = means.get((s, "quadratic"))
        if base is None or base == 0.0:
            raise SchemaError(
                f"structure {s!r} has no quadratic-kernel rows to use as the baseline"
            )
        for k in kernels:
            if (s, k) in means:
                slowdowns[(s, k)] = means[(s, k)] / base
    width = 1.0 / (len(kernels) + 1)
    for j, k in enumerate(kernels):
        xs, ys, labels = [], [], []
        for i, s in enumerate(structures):
            if (s, k) not in slowdowns:
                continue
            xs.append(i + j * width)
            ys.append(slowdowns[(s, k)])
            labels.append(errors.get((s, k), 0.0))
        bars = ax.bar(xs, ys, width=width, label=k)
        for rect, err in zip(bars, labels):
            if err > 0:
                ax.annotate(
                    f"err {err:.0%}",
                    (rect.get_x() + rect.get_width() / 2, rect.get_height()),
                    ha="center",
                    va="bottom",
                    fontsize="x-small",
                )
    ax.axhline(1.0, linestyle="--", linewidth=0.8, color="gray")
    ax.set_xticks([i + width * (len(kernels) - 1) / 2 for i in range(len(structures))])
    ax.set_xticklabels(structures, rotation=30, ha="right")
    ax.set_ylabel("slowdown vs quadratic kernel")
    ax.set_title("Kernel slowdown")
    ax.legend(fontsize="small")
    return {"kind": "kernels", "slowdowns": slowdowns}


_RENDERERS = {
    "ratio": _render_ratio,
    "scaling": _render_scaling,
    "memory": _render_memory,
    "kernels": _render_kernels,
}


def render(spec: PlotSpec) -> dict:
    """Render the figure and return the plotted series (for tests)."""
    rows = load_rows(spec.csv_path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5), layout="constrained")
    try:
        summary = _RENDERERS[spec.figure_kind](rows, ax)
        fig.savefig(spec.output_path, dpi=120)
    finally:
        plt.close(fig)
    return summary


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render a benchmark CSV into a figure."
    )
    parser.add_argument("figure_kind", choices=FIGURE_KINDS)
    parser.add_argument("csv", help="benchmark CSV file")
    parser.add_argument("-o", "--output", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        render(PlotSpec(args.csv, args.figure_kind, args.output))
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.figure_kind} figure to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
