import json
import subprocess
import sys

import pytest

from conftest import CODES, ROOT, SCENARIOS
from quatqec.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "quatqec", *args], capture_output=True, text=True, cwd=ROOT)


def test_replicate(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["bench", "replicate", "--out", str(out), "--plot", str(tmp_path / "r.svg")]) == 0
    assert len(out.read_text().splitlines()) == 25
    notes = json.loads(out.with_suffix(".discrepancies.json").read_text())
    assert len(notes) == 2
    err = capsys.readouterr().err
    assert err.count("DISCREPANCY ") == 2
    assert (tmp_path / "r.svg").exists()


def test_replicate_stdout(capsys):
    assert main(["bench", "replicate"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("scenario,detected")
    assert len(lines) == 25


def test_metrics(capsys):
    assert main(["metrics", "pd", "--pe", "0.1", "--n", "3"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(0.271)
    assert main(["metrics", "df", "--f", "0.5"]) == 0
    assert capsys.readouterr().out.strip() == "0.25"
    assert main(["metrics", "pd", "--pe", "2", "--n", "3"]) == 1


def test_design(capsys):
    assert main(["design", "--alamouti", "1,0,0,1"]) == 0
    out = capsys.readouterr().out
    assert "orthogonality_degree" in out and "deviation" in out
    assert main(["design", "--alamouti", "1,2"]) == 2


def test_verify(capsys):
    assert main(["verify", "--code", str(CODES / "Z3.stab"), "--max-weight", "4"]) == 0
    out = capsys.readouterr().out
    assert "check_generators: pass" in out
    assert "no logical operator of weight <= 4" in out
    assert main(["verify", "--code", "builtin:bitflip", "--max-weight", "1"]) == 0


def test_verify_failures(tmp_path, capsys):
    bad = tmp_path / "bad.stab"
    bad.write_text("n=2 k=0 d=1\nXI\nZI\n")
    assert main(["verify", "--code", str(bad), "--max-weight", "1"]) == 1
    overclaim = tmp_path / "over.stab"
    overclaim.write_text("n=3 k=1 d=3\nZZI\nIZZ\nLX XXX\nLZ ZII\n")
    assert main(["verify", "--code", str(overclaim), "--max-weight", "2"]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert main(["verify", "--code", str(tmp_path / "missing.stab"), "--max-weight", "1"]) == 1


def test_monte_carlo(tmp_path):
    out, rep = tmp_path / "mc.csv", tmp_path / "mc.json"
    assert main(["bench", "monte-carlo", "--scenario", str(SCENARIOS / "steane_weight1.json"), "--out", str(out), "--report", str(rep)]) == 0
    header, row = out.read_text().splitlines()
    assert header == "scenario,trials,detected,corrected,in_stabilizer,logical_errors,undetected_nonidentity,empirical_pd,seed"
    assert row.startswith("steane-w1,10000,10000,10000,")
    assert json.loads(rep.read_text())["mean_fidelity"] == pytest.approx(1.0)


def test_monte_carlo_without_code_file(tmp_path, monkeypatch, capsys):
    sc = tmp_path / "Z4.json"
    sc.write_text(json.dumps({"label": "Z4", "error_model": {"kind": "iid", "p_e": 0.01}, "trials": 10}))
    monkeypatch.chdir(tmp_path)
    assert main(["bench", "monte-carlo", "--scenario", str(sc)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("scenario,detected") and len(lines) == 7
    custom = tmp_path / "c.json"
    custom.write_text(json.dumps({"label": "nope", "n_logical": 1, "n_physical": 5, "t_correct": 1}))
    assert main(["bench", "monte-carlo", "--scenario", str(custom)]) == 1


def test_scaling(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["bench", "scaling", "--codes", "builtin:steane", "builtin:shor", "--samples", "100", "--runs", "1", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 3
    assert main(["bench", "scaling", "--codes", "builtin:steane", "--samples", "10", "--runs", "1"]) == 1


def test_usage_errors():
    assert run("bogus").returncode == 2
    assert run("bench").returncode == 2
    assert run("metrics", "pd", "--pe", "x", "--n", "3").returncode == 2
    r = run("metrics", "pd", "--pe", "0.01", "--n", "10")
    assert r.returncode == 0 and float(r.stdout) == pytest.approx(1 - 0.99**10)
