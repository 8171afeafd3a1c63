import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from radius_lab.cli import main
from radius_lab.matrixio import save_matrix


@pytest.fixture
def mfile(tmp_path):
    def make(A, name="m.json"):
        path = tmp_path / name
        save_matrix(path, np.asarray(A, dtype=complex))
        return str(path)

    return make


def test_radius_prints_omega(mfile, capsys):
    assert main(["radius", mfile([[2, 1], [0, 4]])]) == 0
    assert "omega = 4.118" in capsys.readouterr().out
    assert main(["radius", mfile(np.zeros((2, 2)))]) == 0
    assert "omega = 0" in capsys.readouterr().out
    assert main(["radius", "named:ex_2_11"]) == 0
    assert "omega = 1.5" in capsys.readouterr().out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "rows": [[[1, 0]]]}')
    assert main(["radius", str(bad)]) == 2
    assert main(["radius", str(tmp_path / "missing.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_xi_report(mfile, tmp_path):
    out = tmp_path / "xi.json"
    assert main(["xi", "thm29", mfile([[0, 0], [3, 0]]), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert abs(doc["value"] - 4.5) < 1e-9 and doc["certified"]
    assert len(doc["minimizer"]) == 2
    assert main(["--out", str(out), "xi", "pencil", "named:ex_2_11"]) == 0
    assert json.loads(out.read_text())["value"] == pytest.approx(-1.0)
    assert main(["xi", "thm35", "named:ex_2_11"]) == 2


def test_xi_kian(tmp_path, mfile):
    a = mfile(np.diag([3.0, 0.0]), "a.json")
    b = mfile(np.diag([0.0, 3.0]), "b.json")
    out = tmp_path / "k.json"
    assert main(["xi", "kian", a, b, "--weights", "0.5,0.5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["value"] == pytest.approx(2.25)


def test_bounds_command(mfile, tmp_path):
    out = tmp_path / "b.json"
    assert main(["bounds", "--matrix", mfile([[2, 1], [0, 4]]), "--bound", "thm31_lin", "--out", str(out)]) == 0
    (rep,) = json.loads(out.read_text())["reports"]
    assert rep["id"] == "thm31_lin" and abs(rep["lhs"] - 2.968) < 5e-3
    assert set(rep) >= {"id", "lhs", "rhs", "slack", "applicable", "reason", "witness"}
    assert main(["bounds", "--matrix", "named:ex_3_4", "--bound", "all", "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())["reports"]) > 15
    assert main(["bounds", "--matrix", "named:ex_3_4", "--bound", "cor_power", "--r", "1.5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["reports"][0]["id"] == "cor_power(r=1.5)"
    assert main(["bounds", "--matrix", "named:ex_3_4", "--bound", "bogus"]) == 2


def test_verify_exit_codes(tmp_path):
    cfg = tmp_path / "cfg.json"
    out = tmp_path / "report.json"
    cfg.write_text(json.dumps({"generators": ["ginibre"], "count": 5, "dims": [2, 3]}))
    assert main(["verify", str(cfg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["violations"] == [] and doc["version"]
    cfg.write_text(json.dumps({"generators": ["ginibre"], "bounds": ["nope"]}))
    assert main(["verify", str(cfg)]) == 2


def test_verify_flags_violations(tmp_path, monkeypatch):
    import radius_lab.sweep as sweep

    real = sweep.evaluate_radius_bound

    def broken(A, bid, param=None, ctx=None):
        rep = real(A, bid, param, ctx)
        rep.slack = -1.0
        return rep

    monkeypatch.setattr(sweep, "evaluate_radius_bound", broken)
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"generators": ["named:ex_3_4"], "bounds": ["eq7_upper"]}))
    assert main(["verify", str(cfg), "--out", str(tmp_path / "r.json")]) == 1
    assert json.loads((tmp_path / "r.json").read_text())["violations"]


def test_range_plot(tmp_path):
    csv_path, svg_path = tmp_path / "r.csv", tmp_path / "r.svg"
    assert main(["range-plot", "named:ex_2_11", "--samples", "360", "--out", str(csv_path), "--svg", str(svg_path)]) == 0
    rows = list(csv.reader(csv_path.open()))
    assert rows[0] == ["theta", "lambda_max", "re", "im"]
    assert len(rows) == 361
    assert max(abs(complex(float(r[2]), float(r[3]))) for r in rows[1:]) == pytest.approx(1.5, abs=1e-6)
    assert len(rows[1][1].replace("-", "").split("e")[0].replace(".", "")) >= 12
    svg = svg_path.read_text()
    assert svg.startswith("<svg") and "<polygon" in svg and svg.count("<path") == 2


def test_range_plot_identity_and_segment(tmp_path, mfile):
    out = tmp_path / "i.csv"
    assert main(["range-plot", mfile(np.eye(2)), "--samples", "12", "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))[1:]
    assert all(abs(float(r[2]) - 1) < 1e-12 and abs(float(r[3])) < 1e-12 for r in rows)
    assert main(["range-plot", mfile(np.diag([0.0, 1.0]), "d.json"), "--samples", "36", "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))[1:]
    assert all(abs(float(r[3])) < 1e-12 and -1e-12 <= float(r[2]) <= 1 + 1e-12 for r in rows)
    assert main(["range-plot", "named:ex_3_4", "--samples", "2"]) == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "radius_lab", "radius", "named:ex_3_4"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("omega = 4.118")
