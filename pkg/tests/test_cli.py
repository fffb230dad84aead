import subprocess
import sys

import pytest

from archphase.cli import main
from archphase.circuit import from_qasm
from archphase.phasepoly import parse_phasepoly

WALK = "qubits 4\n0110 0.11\n1000 0.23\n1001 0.37\n1101 0.41\n1100 0.53\n1110 0.67\n"


def test_synth_verify_extract(tmp_path, capsys):
    poly = tmp_path / "p.txt"
    poly.write_text(WALK)
    qasm = tmp_path / "c.qasm"
    assert main(["synth", "--arch", "line_4", "--in", str(poly), "--out", str(qasm), "--trace"]) == 0
    err = capsys.readouterr().err
    assert "base:" in err and "CX x2 -> x3" in err
    assert main(["verify", "--arch", "line_4", "--poly", str(poly), "--qasm", str(qasm)]) == 0
    assert capsys.readouterr().out.strip() == "PASS"
    out = tmp_path / "x.txt"
    assert main(["extract", "--in", str(qasm), "--out", str(out)]) == 0
    assert parse_phasepoly(out.read_text()).is_close(parse_phasepoly(WALK))


def test_verify_fail_reports_property(tmp_path, capsys):
    poly = tmp_path / "p.txt"
    poly.write_text(WALK)
    qasm = tmp_path / "c.qasm"
    qasm.write_text("OPENQASM 2.0;\nqreg q[4];\ncx q[0],q[2];\n")
    assert main(["verify", "--arch", "line_4", "--poly", str(poly), "--qasm", str(qasm)]) == 1
    assert "FAIL: CX(0,2) is not an edge" in capsys.readouterr().out
    qasm.write_text("OPENQASM 2.0;\nqreg q[4];\ncx q[0],q[1];\n")
    assert main(["verify", "--arch", "line_4", "--poly", str(poly), "--qasm", str(qasm)]) == 1
    assert "FAIL: parity" in capsys.readouterr().out


def test_random_and_synth_linear(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert main(["random", "--qubits", "6", "--gadgets", "9", "--seed", "4", "--out", str(out)]) == 0
    assert len(parse_phasepoly(out.read_text())) == 9
    m = tmp_path / "m.txt"
    m.write_text("110\n010\n011\n")
    assert main(["synth-linear", "--arch", "line_3", "--matrix", str(m)]) == 0
    c = from_qasm(capsys.readouterr().out)
    assert len(c) == 2


def test_errors_exit_nonzero(tmp_path, capsys):
    assert main(["random", "--qubits", "2", "--gadgets", "9"]) == 1
    assert "error" in capsys.readouterr().err
    bad = tmp_path / "h.qasm"
    bad.write_text("OPENQASM 2.0;\nqreg q[2];\nh q[0];\n")
    assert main(["extract", "--in", str(bad)]) == 1
    assert "unsupported gate 'h'" in capsys.readouterr().err
    assert main(["synth", "--arch", "nowhere", "--in", str(bad)]) == 1
    m = tmp_path / "s.txt"
    m.write_text("11\n11\n")
    assert main(["synth-linear", "--arch", "line_2", "--matrix", str(m)]) == 1


def test_catalog_listing(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "aspen_16" in out and "singapore_20" in out


def test_bench_commands(tmp_path):
    out = tmp_path / "g"
    args = ["bench", "gadget-scaling", "--archs", "line_4", "--gadgets", "1,3", "--instances", "2", "--out", str(out), "--plots"]
    assert main(args) == 0
    assert (out / "gadget_scaling.csv").exists()
    assert len(list(out.glob("*.svg"))) == 3
    q = tmp_path / "q"
    assert main(["bench", "qubit-scaling", "--archs", "line", "--qubits", "3,4", "--gadgets", "5", "--instances", "2", "--out", str(q), "--no-timing"]) == 0
    assert main(["bench", "plots", "--csv", str(q / "qubit_scaling_summary.csv")]) == 0
    assert len(list(q.glob("*.svg"))) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "archphase", "catalog"], capture_output=True, text=True)
    assert res.returncode == 0 and "aspen_16" in res.stdout


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["synth"])
    assert exc.value.code == 2
