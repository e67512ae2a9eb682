"""Command-line round trip: train a short random run, then summarize it."""

import csv
import subprocess
import sys
from pathlib import Path


def run_cli(*argv):
    return subprocess.run([sys.executable, "-m", "uavtrainer.cli", *argv],
                          capture_output=True, text=True)


def test_train_then_summarize_roundtrip(live_server, tmp_path):
    host, port = live_server
    log = tmp_path / "cli.csv"
    curve = tmp_path / "curve.csv"

    result = run_cli("train", "--host", host, "--port", str(port),
                     "--mode", "random", "--episodes", "6", "--seed", "1",
                     "--reduced", "--config", "max_steps=30",
                     "--log", str(log), "--quiet")
    assert result.returncode == 0, result.stderr
    assert "completed 6 episodes" in result.stdout
    with log.open(newline="") as fh:
        assert len(list(csv.DictReader(fh))) == 6

    result = run_cli("summarize", "--log", str(log), "--window", "4",
                     "--out", str(curve))
    assert result.returncode == 0, result.stderr
    with curve.open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 6
    assert list(rows[0]) == ["episode", "mean", "p95_low", "p95_high"]

    result = run_cli("summarize", "--log", str(log), "--window", "3")
    assert result.returncode == 0
    assert result.stdout.startswith("episode 6: mean ")


def test_usage_errors_exit_2(tmp_path):
    assert run_cli().returncode == 2
    assert run_cli("train").returncode == 2  # --port is required
    assert run_cli("train", "--port", "1", "--mode", "walk").returncode == 2


def test_runtime_errors_exit_1(tmp_path):
    result = run_cli("train", "--port", "9", "--mode", "random",
                     "--episodes", "1", "--log", str(tmp_path / "x.csv"))
    assert result.returncode == 1
    assert "uavtrainer:" in result.stderr

    missing = tmp_path / "missing.csv"
    result = run_cli("summarize", "--log", str(missing))
    assert result.returncode == 1

    bad_json = run_cli("train", "--port", "1", "--config", "max_steps=oops",
                       "--log", str(tmp_path / "y.csv"))
    assert bad_json.returncode != 0


def test_bad_config_entry_reports_key(tmp_path):
    result = run_cli("train", "--port", "1", "--config", "nokey",
                     "--log", str(tmp_path / "z.csv"))
    assert result.returncode != 0
    assert "key=JSONVALUE" in result.stderr
