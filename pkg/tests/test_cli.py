"""Tests for the command-line interface: subcommands, flags, exit codes."""

from __future__ import annotations

import pytest

from inchull.bench import read_csv
from inchull.cli import main
from inchull.datagen import load_points


def test_gen_writes_point_file(tmp_path, capsys):
    out = tmp_path / "pts.txt"
    code = main(["gen", "--dataset", "disk", "--n", "64", "--seed", "9",
                 "--out", str(out)])
    assert code == 0
    pts = load_points(out)
    assert len(pts) == 64
    assert "64 disk points" in capsys.readouterr().out
    # Same seed, same bits.
    out2 = tmp_path / "pts2.txt"
    assert main(["gen", "--dataset", "disk", "--n", "64", "--seed", "9",
                 "--out", str(out2)]) == 0
    assert load_points(out2) == pts


def test_gen_requires_generator_kind_and_out(tmp_path, capsys):
    assert main(["gen", "--dataset", "nope", "--out", str(tmp_path / "x")]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["gen", "--dataset", "box"]) == 2


def test_verify_passes_quickly(capsys):
    code = main(["verify", "--n", "64", "--repeats", "1", "--structure", "vector"])
    assert code == 0
    assert "verification passed" in capsys.readouterr().out


def test_bench_ratio_writes_csv(tmp_path):
    out = tmp_path / "ratio.csv"
    code = main(["bench", "ratio", "--n", "256", "--ratio", "1:1",
                 "--structure", "all", "--kernel", "quadratic",
                 "--repeats", "1", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 6
    assert {r.structure for r in rows} == {
        "vector", "avl", "btree", "log-linear", "log-btree", "log-hull"}
    assert all(r.n_insert == 128 and r.n_query == 128 for r in rows)
    assert all(r.kernel == "quadratic" for r in rows)


def test_bench_ratio_zero_insert_ratio(tmp_path):
    out = tmp_path / "q.csv"
    code = main(["bench", "ratio", "--n", "100", "--ratio", "0:1",
                 "--structure", "vector", "--repeats", "1", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert rows[0].n_insert == 0 and rows[0].n_query == 100
    assert rows[0].hull_size == 0


def test_bench_scale_takes_n_list(tmp_path):
    out = tmp_path / "scale.csv"
    code = main(["bench", "scale", "--n", "64,128", "--structure", "vector",
                 "--repeats", "1", "--kernel", "quadratic", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert [r.n_insert for r in rows] == [64, 128]
    assert all(r.experiment == "scale" for r in rows)


def test_bench_params_grids(tmp_path):
    out = tmp_path / "params.csv"
    code = main(["bench", "params", "--n", "128", "--bucket-size", "64,512",
                 "--btree-node-bytes", "256", "--repeats", "1",
                 "--kernel", "quadratic", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert {r.experiment for r in rows} == {
        "params-cap64", "params-cap512", "params-nb256"}
    assert {r.dataset for r in rows} == {"box", "circle"}


def test_bench_kernels_and_audit(tmp_path, capsys):
    out = tmp_path / "kernels.csv"
    code = main(["bench", "kernels", "--n", "128", "--dataset", "box",
                 "--structure", "vector", "--repeats", "2", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert {r.kernel for r in rows} == {"naive", "quadratic", "exact"}
    assert len(rows) == 6

    out2 = tmp_path / "audit.csv"
    code = main(["audit", "--n", "128", "--dataset", "box",
                 "--structure", "vector", "--out", str(out2)])
    assert code == 0
    rows2 = read_csv(out2)
    assert len(rows2) == 30  # audit default: 10 repeats x 3 kernels
    captured = capsys.readouterr().out
    assert "error fraction" in captured


def test_bench_requires_out(capsys):
    assert main(["bench", "ratio", "--n", "64"]) == 2
    assert "--out is required" in capsys.readouterr().err


def test_file_dataset_via_cli(tmp_path):
    pts_file = tmp_path / "cloud.txt"
    assert main(["gen", "--dataset", "bell", "--n", "200", "--out",
                 str(pts_file)]) == 0
    out = tmp_path / "file_ratio.csv"
    code = main(["bench", "ratio", "--n", "200", "--ratio", "1:1",
                 "--dataset", str(pts_file), "--structure", "avl",
                 "--repeats", "1", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert rows[0].dataset == "cloud.txt"


def test_bad_flag_values_are_usage_errors(tmp_path):
    with pytest.raises(SystemExit):
        main(["bench", "ratio", "--ratio", "banana", "--out", str(tmp_path / "x")])
    with pytest.raises(SystemExit):
        main(["bench", "ratio", "--n", "abc", "--out", str(tmp_path / "x")])
    with pytest.raises(SystemExit):
        main(["bench", "ratio", "--structure", "rope", "--out", str(tmp_path / "x")])
    # Multiple --n values outside `bench scale` are contract errors.
    assert main(["bench", "ratio", "--n", "64,128",
                 "--out", str(tmp_path / "x.csv")]) == 2


def test_sequential_flag_accepted(tmp_path):
    out = tmp_path / "seq.csv"
    assert main(["bench", "ratio", "--n", "64", "--structure", "vector",
                 "--repeats", "1", "--sequential", "--out", str(out)]) == 0
    assert read_csv(out)
