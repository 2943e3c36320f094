"""End-to-end smoke tests driving the command-line tool."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("MCMO_CLI")

pytestmark = pytest.mark.skipif(CLI is None, reason="MCMO_CLI not set")

TINY_CONFIG = {
    "problem": "kursawe",
    "seed": 4,
    "episodes": 15,
    "batch_size": 10,
    "learn_iters": 2,
    "actor_period": 2,
    "reproduction": 5,
    "warmup_episodes": 5,
    "hidden_widths": [8, 8],
    "utopia_cells": 5,
    "analysis_cells": 5,
    "hv_log_interval": 5,
}


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_optimize_then_analyze(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps(TINY_CONFIG))
    out = tmp_path / "run"

    result = run_cli("optimize", "--config", str(config), "--out", str(out))
    assert result.returncode == 0, result.stderr
    assert (out / "records.csv").exists()
    assert "final hv_avg" in result.stdout

    result = run_cli("analyze", "--run", str(out), "--cells", "5")
    assert result.returncode == 0, result.stderr
    assert (out / "fronts.csv").exists()
    assert (out / "hv_report.json").exists()


def test_validation_errors_exit_1(tmp_path):
    config = tmp_path / "bad.json"
    config.write_text('{"problem": "kursawe", "episdes": 5}')
    result = run_cli("optimize", "--config", str(config), "--out", str(tmp_path / "x"))
    assert result.returncode == 1
    assert "episdes" in result.stderr

    config.write_text('{"problem": "airfoil-external"}')
    result = run_cli("optimize", "--config", str(config), "--out", str(tmp_path / "y"))
    assert result.returncode == 1
    assert "binary" in result.stderr


def test_airfoil_geom(tmp_path):
    out = tmp_path / "foil.dat"
    result = run_cli("airfoil-geom", "--mu-x", "-0.1", "--mu-y", "0.05", "--beta", "10",
                     "--points", "150", "--out", str(out))
    assert result.returncode == 0, result.stderr
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 150
    first, last = lines[0].split(), lines[-1].split()
    assert first == last  # closed contour

    result = run_cli("airfoil-geom", "--mu-x", "-0.9", "--mu-y", "0.05", "--beta", "10",
                     "--out", str(out))
    assert result.returncode == 1
    assert "mu_x" in result.stderr


def test_experiment_smoke(tmp_path):
    config = dict(TINY_CONFIG)
    config["experiment"] = {
        "n_conditions": 2,
        "repetitions": 1,
        "sc_eval_budget": 25,
        "mc_eval_budget": 60,
        "hv_ref_mode": "oracle-fraction",
        "oracle_fraction": 0.3,
        "oracle_budget": 10000,
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    out = tmp_path / "exp"
    result = run_cli("experiment", "--config", str(path), "--out", str(out))
    assert result.returncode == 0, result.stderr
    report = json.loads((out / "experiment_report.json").read_text())
    assert report["n_conditions"] == 2
    assert len(report["runs"]) == 1
    run = report["runs"][0]
    assert run["sc_total"] == sum(o["evaluations"] for o in run["sc"])
    assert run["mc_total"] == sum(o["evaluations"] for o in run["mc"])
