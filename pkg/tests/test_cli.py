import csv
import json

import numpy as np
import pytest

from rosenau_waves import io
from rosenau_waves.cli import cs_range, main, number
from rosenau_waves.spectral import Grid


def _rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def test_number_and_ranges():
    assert number("1/3") == pytest.approx(1 / 3, rel=1e-16)
    assert number("-2.5") == -2.5
    assert len(cs_range("0.5:2.0:0.05")) == 31
    assert cs_range("1:2:0.5") == [1.0, 1.5, 2.0]


def test_classify_rlw(capsys):
    code = main(["classify", "--family", "rosenau-rlw", "--alpha", "-1", "--beta", "1", "--epsilon", "1", "--cs", "1.1"])
    assert code == 0
    rec = json.loads(capsys.readouterr().out.strip())
    assert rec["label"] == "Region2"
    assert rec["predicted_waves"] == ["CSW"]


def test_classify_range(capsys, tmp_path):
    code = main(["classify", "--family", "rosenau-rlw", "--alpha", "-1", "--cs-range", "0.5:2.0:0.05",
                 "--out", str(tmp_path)])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 31
    assert len(json.loads((tmp_path / "classify.json").read_text())) == 31
    assert json.loads((tmp_path / "effective-config.json").read_text())["alpha"] == -1


def test_classify_invalid(capsys):
    assert main(["classify", "--alpha", "3", "--beta", "1", "--cs", "1.5"]) == 2
    assert "alpha^2 < 4 beta" in capsys.readouterr().err


def test_solve_benchmark_compare_exact(tmp_path):
    out = tmp_path / "rlw"
    assert main(["solve", "--benchmark", "rlw", "--compare-exact", "--out", str(out)]) == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["converged"] and rep["linf_vs_exact"] <= 1e-10
    prof = _rows(out / "profile.csv")
    assert prof[0] == ["X", "u", "u'", "u''"] and len(prof) == 1025
    trace = _rows(out / "trace.csv")
    assert trace[0] == ["n", "Error", "StabErr", "Res", "M"]
    assert (out / "profile.dat").exists() and (out / "phase.dat").exists()
    assert b"\r\n" not in (out / "profile.csv").read_bytes()
    # 17 significant digits
    assert len(prof[513][1].lstrip("-").replace(".", "").split("e")[0].lstrip("0")) >= 15


def test_solve_replay_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["solve", "--alpha", "1", "--cs", "1.5", "--N", "512", "--L", "60", "--guess", "gaussian:1:1",
                 "--svg", "--out", str(a)]) == 0
    assert (a / "profile.svg").exists()
    assert main(["solve", "--config", str(a / "effective-config.json"), "--out", str(b)]) == 0
    for name in ("profile.csv", "trace.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_inline_flags_override_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"alpha": -1, "cs": 1.2, "N": 256, "L": 60}))
    assert main(["solve", "--config", str(cfg), "--cs", "1.3", "--out", str(tmp_path / "o")]) == 0
    eff = json.loads((tmp_path / "o" / "effective-config.json").read_text())
    assert eff["cs"] == 1.3 and eff["alpha"] == -1 and eff["N"] == 256


def test_solve_resonant(capsys, tmp_path):
    code = main(["solve", "--family", "rosenau-kdv", "--eta", "1", "--cs", "0.9", "--out", str(tmp_path)])
    assert code == 4
    assert "resonant k = 0.3038" in capsys.readouterr().err


def test_solve_not_converged_still_writes(tmp_path):
    assert main(["solve", "--cs", "1.5", "--max-iter", "3", "--out", str(tmp_path)]) == 3
    assert len(_rows(tmp_path / "trace.csv")) == 1 + 4
    assert not json.loads((tmp_path / "report.json").read_text())["converged"]


def test_solve_json_format(tmp_path):
    assert main(["solve", "--cs", "1.5", "--N", "256", "--L", "60", "--format", "json", "--out", str(tmp_path)]) == 0
    prof = json.loads((tmp_path / "profile.json").read_text())
    assert len(prof["u"]) == 256


def test_bad_guess_and_missing_cs(tmp_path):
    assert main(["solve", "--cs", "1.5", "--guess", "triangle", "--out", str(tmp_path)]) == 2
    assert main(["solve", "--out", str(tmp_path)]) == 2


def test_sweep(tmp_path, capsys):
    code = main(["sweep", "--cs-list", "0.9,1.5,2", "--N", "256", "--L", "60", "--jobs", "2", "--out", str(tmp_path)])
    assert code == 0
    rows = _rows(tmp_path / "sweep.csv")
    assert rows[0] == ["cs", "amplitude", "converged", "coercive", "iterations", "status"]
    assert rows[1][5] == "below coercivity threshold" and rows[1][1] == "nan"
    assert float(rows[2][1]) < float(rows[3][1])
    assert (tmp_path / "sweep.dat").exists()


def test_validate(capsys, tmp_path):
    assert main(["validate", "--quick", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "15/15 checks passed" in out
    assert main(["validate", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["passed"] and len(rep["checks"]) == 15


def test_evolve_from_solved_profile(tmp_path):
    s = tmp_path / "s"
    assert main(["solve", "--cs", "1.5", "--N", "256", "--L", "60", "--out", str(s)]) == 0
    e = tmp_path / "e"
    code = main(["evolve", "--profile", str(s / "profile.csv"), "--cs", "1.5", "--N", "256", "--L", "60",
                 "--dt", "0.01", "--T", "1", "--record-every", "50", "--out", str(e)])
    assert code == 0
    rep = json.loads((e / "report.json").read_text())
    assert rep["steps"] == 100
    assert rep["V_drift"] <= 1e-10 and rep["shape_error"]["at_cs"] <= 1e-6
    inv = _rows(e / "invariants.csv")
    assert inv[0] == ["t", "V", "H"] and len(inv) == 4
    assert len(_rows(e / "trajectory.csv")) == 1 + 3 * 256


def test_evolve_blow_up(tmp_path):
    prof = tmp_path / "p.csv"
    g = Grid(L=20.0, N=128)
    io.write_csv(prof, ["X", "u"], [g.x, 1e4 * np.exp(-g.x**2)])
    code = main(["evolve", "--profile", str(prof), "--L", "20", "--N", "128", "--dt", "0.5", "--T", "50",
                 "--out", str(tmp_path / "o")])
    assert code == 1
