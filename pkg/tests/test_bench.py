import csv
import io
import logging
import warnings

import pytest

from archphase import bench
from archphase.bench import BenchConfig, BenchError, emit_plots, run_gadget_scaling, run_qubit_scaling
from archphase.circuit import Circuit, RZ


def cfg(tmp_path, **kw):
    base = dict(archs=["line_5"], gadgets=[1, 4], instances=3, seed=7, out_dir=tmp_path)
    base.update(kw)
    return BenchConfig(**base)


def read(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


def test_config_validation(tmp_path):
    with pytest.raises(ValueError):
        cfg(tmp_path, gadgets=[0])
    with pytest.raises(ValueError):
        cfg(tmp_path, instances=0)
    with pytest.raises(ValueError):
        cfg(tmp_path, archs=[])


def test_gadget_scaling_outputs(tmp_path):
    recs = run_gadget_scaling(cfg(tmp_path))
    assert len(recs) == 6 and all(r.verified for r in recs)
    rows = read(tmp_path / "gadget_scaling.csv")
    assert list(rows[0]) == list(bench.RECORD_FIELDS)
    assert [(r["gadgets"], r["instance"]) for r in rows] == [("1", "0"), ("1", "1"), ("1", "2"), ("4", "0"), ("4", "1"), ("4", "2")]
    assert all(int(r["cx_count"]) >= 0 and float(r["runtime_s"]) >= 0 for r in rows)
    summary = read(tmp_path / "gadget_scaling_summary.csv")
    assert list(summary[0]) == list(bench.SUMMARY_FIELDS)
    assert len(summary) == 2 and summary[0]["instances"] == "3"


def test_k1_cells_bounded(tmp_path):
    recs = run_gadget_scaling(cfg(tmp_path, gadgets=[1], instances=5))
    for r in recs:
        assert r.cx_count >= 0 and r.cx_depth <= r.cx_count


def test_byte_identical_without_timing(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_gadget_scaling(cfg(a, record_runtime=False))
    run_gadget_scaling(cfg(b, record_runtime=False))
    for name in ("gadget_scaling.csv", "gadget_scaling_summary.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_non_runtime_columns_stable_with_timing(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_gadget_scaling(cfg(a))
    run_gadget_scaling(cfg(b))
    strip = lambda rows: [{k: v for k, v in r.items() if k != "runtime_s"} for r in rows]
    assert strip(read(a / "gadget_scaling.csv")) == strip(read(b / "gadget_scaling.csv"))


def test_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_gadget_scaling(cfg(a, record_runtime=False, archs=["line_5", "complete_5"]))
    run_gadget_scaling(cfg(b, record_runtime=False, archs=["line_5", "complete_5"], jobs=2))
    assert (a / "gadget_scaling.csv").read_bytes() == (b / "gadget_scaling.csv").read_bytes()


def test_too_many_gadgets(tmp_path):
    with pytest.raises(BenchError):
        run_gadget_scaling(cfg(tmp_path, archs=["line_3"], gadgets=[8]))


def test_verification_failure_writes_reproducer(tmp_path, monkeypatch):
    monkeypatch.setattr(bench, "synthesize", lambda p, g: Circuit(g.n, [RZ(0, 0.5)]))
    with pytest.raises(BenchError):
        run_gadget_scaling(cfg(tmp_path, gadgets=[4], instances=2))
    repros = sorted(tmp_path.glob("repro_*.txt"))
    assert len(repros) == 2
    assert "seed 7/5/4/0" in repros[0].read_text()
    assert read(tmp_path / "gadget_scaling_summary.csv") == []
    rows = read(tmp_path / "gadget_scaling.csv")
    assert {r["verified"] for r in rows} == {"false"}


def test_qubit_scaling_skips_and_single_cell(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        recs = run_qubit_scaling(cfg(tmp_path, archs=["complete"], qubits=[2, 4], gadgets=[10], instances=2))
    assert "skipping complete_2" in caplog.text
    summary = read(tmp_path / "qubit_scaling_summary.csv")
    assert len(summary) == 1 and summary[0]["arch"] == "complete_4"
    assert len(recs) == 2


def test_qubit_scaling_monotone_on_complete(tmp_path):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        run_qubit_scaling(cfg(tmp_path, archs=["complete"], qubits=[4, 9, 16], gadgets=[12], instances=4))
    summary = read(tmp_path / "qubit_scaling_summary.csv")
    means = [float(r["mean_cx_count"]) for r in summary]
    assert means == sorted(means)


def test_soft_check_warns():
    rows = [
        {"arch": "complete_4", "qubits": 4, "gadgets": 5, "mean_cx_count": 10.0},
        {"arch": "complete_9", "qubits": 9, "gadgets": 5, "mean_cx_count": 8.0},
    ]
    with pytest.warns(UserWarning):
        bench._soft_monotone_check(rows)


def test_plots(tmp_path):
    run_gadget_scaling(cfg(tmp_path, archs=["line_5", "complete_5"], gadgets=[1, 5, 10]))
    paths = emit_plots(tmp_path / "gadget_scaling_summary.csv")
    assert sorted(p.name for p in paths) == [
        "gadget_scaling_cx_count.svg",
        "gadget_scaling_cx_depth.svg",
        "gadget_scaling_runtime_s.svg",
    ]
    assert all(p.read_text().lstrip().startswith("<?xml") for p in paths)


def test_plots_deterministic(tmp_path):
    run_gadget_scaling(cfg(tmp_path, record_runtime=False))
    first = [p.read_bytes() for p in emit_plots(tmp_path / "gadget_scaling_summary.csv", tmp_path / "p1")]
    second = [p.read_bytes() for p in emit_plots(tmp_path / "gadget_scaling_summary.csv", tmp_path / "p2")]
    assert len(first) == 2 and first == second


def test_plots_bad_input(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text(",".join(bench.SUMMARY_FIELDS) + "\n")
    with pytest.raises(BenchError):
        emit_plots(empty)
    bad = tmp_path / "bad.csv"
    bad.write_text("arch,qubits\nx,1\n")
    with pytest.raises(BenchError):
        emit_plots(bad)
    worse = tmp_path / "worse.csv"
    worse.write_text(",".join(bench.SUMMARY_FIELDS) + "\nline_4,four,1,1,1,1,1\n")
    with pytest.raises(BenchError):
        emit_plots(worse)
