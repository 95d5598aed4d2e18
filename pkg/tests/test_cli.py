"""Command line interface, exercised through real subprocesses."""

from __future__ import annotations

import csv
import io
import subprocess
import sys

import pytest

from ofdm_spm import (
    Policy,
    SimConfig,
    ber_total,
    power_pair_for,
    run_sweep,
    scan_levels,
    write_csv,
)
from ofdm_spm.cli import THEORY_COLUMNS
from ofdm_spm.harness import CSV_COLUMNS


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "ofdm_spm.cli", *args],
        capture_output=True,
        text=True,
        timeout=120,
    )


class TestTheory:
    def test_default_grid_to_stdout(self):
        proc = run_cli("theory")
        assert proc.returncode == 0
        rows = list(csv.reader(io.StringIO(proc.stdout)))
        assert rows[0] == list(THEORY_COLUMNS)
        assert len(rows) == 8
        assert [float(r[0]) for r in rows[1:]] == [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0]

    def test_values_match_library(self):
        proc = run_cli("theory", "--snr-grid", "10", "--policy", "saving")
        row = list(csv.reader(io.StringIO(proc.stdout)))[1]
        pair = power_pair_for(Policy.POWER_SAVING, 1.35)
        assert float(row[THEORY_COLUMNS.index("ber_total")]) == pytest.approx(
            ber_total(10.0, pair), abs=1e-15
        )

    def test_out_file(self, tmp_path):
        out = tmp_path / "theory.csv"
        proc = run_cli("theory", "--snr-grid", "0,10", "--out", str(out))
        assert proc.returncode == 0
        assert proc.stdout == ""
        assert len(out.read_text().splitlines()) == 3


class TestSimulate:
    def test_seed_required(self):
        proc = run_cli("simulate", "--snr", "10")
        assert proc.returncode == 2
        assert "--seed" in proc.stderr

    def test_noiseless_identity_point(self, tmp_path):
        out = tmp_path / "point.csv"
        proc = run_cli(
            "simulate",
            "--snr", "inf",
            "--channel", "identity",
            "--symbols", "200",
            "--seed", "0",
            "--out", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        rows = list(csv.reader(out.open()))
        assert rows[0] == list(CSV_COLUMNS)
        rec = dict(zip(rows[0], rows[1]))
        assert float(rec["ber_total_sim"]) == 0.0
        assert float(rec["throughput"]) == 2.0
        assert int(rec["bits_counted"]) == 2 * 52 * 200


class TestSweep:
    def test_matches_library_bytes(self, tmp_path):
        out = tmp_path / "sweep.csv"
        proc = run_cli(
            "sweep",
            "--channel", "flat",
            "--symbols", "300",
            "--snr-grid", "5,15",
            "--seed", "3",
            "--out", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        cfg = SimConfig(
            channel_mode="flat", ofdm_symbols=300, snr_db_grid=(5.0, 15.0), master_seed=3
        )
        buf = io.StringIO()
        write_csv(run_sweep(cfg), buf)
        assert out.read_text() == buf.getvalue()

    def test_config_file_with_cli_override(self, tmp_path):
        cfg_file = tmp_path / "run.cfg"
        cfg_file.write_text(
            "# comment line\n"
            "channel_mode = flat\n"
            "ofdm_symbols = 200\n"
            "snr_db_grid = 5, 15\n"
            "master_seed = 3\n"
            "policy = realloc_nonopt\n"
        )
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        a = run_cli("sweep", "--config", str(cfg_file), "--out", str(out_a))
        assert a.returncode == 0, a.stderr
        # explicit flag wins over the file value
        b = run_cli(
            "sweep", "--config", str(cfg_file), "--seed", "4", "--out", str(out_b)
        )
        assert b.returncode == 0, b.stderr
        rows_a = out_a.read_text().splitlines()
        rows_b = out_b.read_text().splitlines()
        assert rows_a[1].split(",")[-1] == "3"
        assert rows_b[1].split(",")[-1] == "4"
        assert rows_a[1] != rows_b[1]

    def test_unknown_config_key_fails(self, tmp_path):
        cfg_file = tmp_path / "bad.cfg"
        cfg_file.write_text("fft_sizes = 64\n")
        proc = run_cli("sweep", "--config", str(cfg_file), "--seed", "0")
        assert proc.returncode == 2
        assert "unknown key" in proc.stderr

    def test_invalid_value_fails_cleanly(self):
        proc = run_cli("sweep", "--seed", "0", "--cp-len", "7")
        assert proc.returncode == 2
        assert "error:" in proc.stderr


class TestBaseline:
    def test_baseline_runs(self, tmp_path):
        out = tmp_path / "base.csv"
        proc = run_cli(
            "baseline",
            "--channel", "identity",
            "--symbols", "100",
            "--snr-grid", "inf",
            "--seed", "1",
            "--out", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        rec = dict(zip(CSV_COLUMNS, out.read_text().splitlines()[1].split(",")))
        assert rec["ber_power_sim"] == "nan"
        assert float(rec["throughput"]) == 1.0


class TestOptimize:
    def test_closed_form_scan(self):
        proc = run_cli("optimize", "--policy", "saving")
        assert proc.returncode == 0, proc.stderr
        assert "policy=saving" in proc.stdout
        assert "high=1.35" in proc.stdout

    def test_trace_file(self, tmp_path):
        out = tmp_path / "trace.csv"
        proc = run_cli(
            "optimize", "--policy", "realloc_opt", "--out", str(out)
        )
        assert proc.returncode == 0, proc.stderr
        rows = list(csv.reader(out.open()))
        assert rows[0] == ["high", "low", "objective"]
        res = scan_levels(Policy.REALLOC_OPTIMIZED)
        assert len(rows) - 1 == res.trace_high.size
        assert float(rows[1][0]) == pytest.approx(res.trace_high[0])

    def test_monte_carlo_needs_seed(self):
        proc = run_cli("optimize", "--objective", "monte_carlo")
        assert proc.returncode == 2
        assert "--seed" in proc.stderr

    def test_monte_carlo_runs(self):
        proc = run_cli(
            "optimize",
            "--objective", "monte_carlo",
            "--seed", "5",
            "--channel", "flat",
            "--symbols", "200",
            "--snr-grid", "10",
            "--h-start", "1.2",
            "--h-step", "0.1",
        )
        assert proc.returncode == 0, proc.stderr
        assert "objective=" in proc.stdout

    def test_bad_policy_rejected(self):
        proc = run_cli("optimize", "--policy", "psaving")
        assert proc.returncode == 2


class TestEntryPoint:
    def test_console_script_installed(self):
        proc = subprocess.run(
            ["ofdm-spm", "theory", "--snr-grid", "10"],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith(",".join(THEORY_COLUMNS[:2]))
