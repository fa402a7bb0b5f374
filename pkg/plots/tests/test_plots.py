"""Tests for the figure renderer: all four kinds, schema errors, aggregation."""

from __future__ import annotations

import pytest

from hullplots.cli import CSV_HEADER, PlotSpec, SchemaError, load_rows, main, render

HEADER = ",".join(CSV_HEADER)


def _write(path, lines):
    path.write_text("\n".join(lines) + "\n")


def _row(
    experiment="ratio",
    structure="vector",
    kernel="quadratic",
    dataset="box",
    seed=0,
    repeat=0,
    n_insert=128,
    n_query=128,
    t_ins="0.5",
    t_q="0.25",
    hull=20,
    peak=400,
    errors=0,
    timed_out="0",
):
    return (
        f"{experiment},{structure},{kernel},{dataset},{seed},{repeat},"
        f"{n_insert},{n_query},{t_ins},{t_q},{hull},{peak},{errors},{timed_out}"
    )


@pytest.fixture
def ratio_csv(tmp_path):
    f = tmp_path / "ratio.csv"
    _write(
        f,
        [
            HEADER,
            _row(structure="vector", repeat=0, t_ins="0.10", t_q="0.10"),
            _row(structure="vector", repeat=1, t_ins="0.30", t_q="0.10"),
            _row(structure="avl", repeat=0, t_ins="0.50", t_q="0.50"),
            _row(structure="avl", repeat=1, t_ins="0.70", t_q="0.30"),
        ],
    )
    return f


def test_ratio_renders_and_aggregates_by_mean(ratio_csv, tmp_path):
    out = tmp_path / "ratio.png"
    summary = render(PlotSpec(str(ratio_csv), "ratio", str(out)))
    assert out.exists() and out.stat().st_size > 0
    series = summary["series"]
    assert series["vector"]["128:128"] == pytest.approx(0.3)  # mean of 0.2 and 0.4
    assert series["avl"]["128:128"] == pytest.approx(1.0)


def test_scaling_renders_one_curve_per_structure(tmp_path):
    f = tmp_path / "scale.csv"
    _write(
        f,
        [
            HEADER,
            _row(experiment="scale", structure="vector", n_insert=64, t_ins="0.1", t_q="0.0"),
            _row(experiment="scale", structure="vector", n_insert=128, t_ins="0.2", t_q="0.0"),
            _row(experiment="scale", structure="btree", n_insert=64, t_ins="0.3", t_q="0.0"),
            _row(experiment="scale", structure="btree", n_insert=128, t_ins="0.4", t_q="0.0"),
        ],
    )
    out = tmp_path / "scale.png"
    summary = render(PlotSpec(str(f), "scaling", str(out)))
    assert out.exists()
    assert set(summary["series"]) == {"vector", "btree"}
    assert list(summary["series"]["vector"]) == [64, 128]


def test_memory_renders_six_bars_with_baseline(tmp_path):
    f = tmp_path / "mem.csv"
    structures = ["vector", "avl", "btree", "log-linear", "log-btree", "log-hull"]
    rows = [
        _row(structure=s, peak=1000 * (i + 1)) for i, s in enumerate(structures)
    ]
    _write(f, [HEADER] + rows)
    out = tmp_path / "mem.png"
    summary = render(PlotSpec(str(f), "memory", str(out)))
    assert out.exists()
    assert len(summary["bars"]) == 6
    assert summary["baseline"] == "vector"


def test_kernels_renders_slowdowns_vs_quadratic(tmp_path):
    f = tmp_path / "k.csv"
    _write(
        f,
        [
            HEADER,
            _row(experiment="kernels", kernel="quadratic", t_ins="1.0", t_q="0.0"),
            _row(experiment="kernels", kernel="exact", t_ins="4.0", t_q="0.0"),
            _row(experiment="kernels", kernel="naive", t_ins="1.0", t_q="0.0", errors=1),
        ],
    )
    out = tmp_path / "k.png"
    summary = render(PlotSpec(str(f), "kernels", str(out)))
    assert out.exists()
    assert summary["slowdowns"][("vector", "exact")] == pytest.approx(4.0)
    assert summary["slowdowns"][("vector", "quadratic")] == pytest.approx(1.0)


def test_kernels_requires_quadratic_baseline(tmp_path):
    f = tmp_path / "k.csv"
    _write(f, [HEADER, _row(experiment="kernels", kernel="exact")])
    with pytest.raises(SchemaError, match="quadratic"):
        render(PlotSpec(str(f), "kernels", str(tmp_path / "k.png")))


def test_empty_csv_is_an_error(tmp_path):
    f = tmp_path / "empty.csv"
    _write(f, [HEADER])
    with pytest.raises(SchemaError, match="no data rows"):
        load_rows(str(f))
    truly_empty = tmp_path / "zero.csv"
    truly_empty.write_text("")
    with pytest.raises(SchemaError, match="empty file"):
        load_rows(str(truly_empty))


def test_schema_mismatch_names_offending_column(tmp_path):
    f = tmp_path / "bad.csv"
    bad_header = HEADER.replace("peak_bytes", "peak_kb")
    _write(f, [bad_header, _row()])
    with pytest.raises(SchemaError, match="peak_kb"):
        load_rows(str(f))
    g = tmp_path / "short.csv"
    _write(g, [HEADER.rsplit(",", 1)[0], _row().rsplit(",", 1)[0]])
    with pytest.raises(SchemaError, match="timed_out"):
        load_rows(str(g))
    h = tmp_path / "extra.csv"
    _write(h, [HEADER + ",bonus", _row() + ",1"])
    with pytest.raises(SchemaError, match="bonus"):
        load_rows(str(h))


def test_bad_cell_reports_line_number(tmp_path):
    f = tmp_path / "cell.csv"
    _write(f, [HEADER, _row(seed="banana")])
    with pytest.raises(SchemaError, match="line 2"):
        load_rows(str(f))


def test_timed_out_rows_are_skipped_by_time_figures(tmp_path):
    f = tmp_path / "t.csv"
    _write(
        f,
        [
            HEADER,
            _row(structure="vector", t_ins="0.1", t_q="0.1"),
            _row(structure="avl", t_ins="", t_q="", timed_out="1"),
        ],
    )
    out = tmp_path / "t.png"
    summary = render(PlotSpec(str(f), "ratio", str(out)))
    assert set(summary["series"]) == {"vector"}
    # But an all-timed-out CSV cannot be plotted.
    g = tmp_path / "all_t.csv"
    _write(g, [HEADER, _row(t_ins="", t_q="", timed_out="1")])
    with pytest.raises(SchemaError, match="timed out"):
        render(PlotSpec(str(g), "ratio", str(tmp_path / "x.png")))


def test_main_exit_codes(tmp_path, ratio_csv, capsys):
    out = tmp_path / "fig.png"
    assert main(["ratio", str(ratio_csv), "-o", str(out)]) == 0
    assert "wrote ratio figure" in capsys.readouterr().out

    bad = tmp_path / "bad.csv"
    _write(bad, [HEADER.replace("kernel", "colonel"), _row()])
    assert main(["ratio", str(bad), "-o", str(out)]) == 1
    assert "colonel" in capsys.readouterr().err

    assert main(["memory", str(tmp_path / "missing.csv"), "-o", str(out)]) == 1
    with pytest.raises(SystemExit):
        main(["volume", str(ratio_csv), "-o", str(out)])


def test_plot_spec_validates_kind(tmp_path):
    with pytest.raises(ValueError):
        PlotSpec("x.csv", "volume", "y.png")
