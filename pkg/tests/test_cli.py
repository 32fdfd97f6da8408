"""Command-line interface: formats, determinism, exit codes, config handling."""
import math
import subprocess
import sys

import numpy as np
import pytest

CLI = [sys.executable, "-m", "horowave.cli"]


def run(*args, **kw):
    return subprocess.run(CLI + list(args), capture_output=True, text=True, **kw)


def read_field(path):
    rows = []
    footer = {}
    with open(path) as fh:
        header = fh.readline().strip()
        for line in fh:
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                footer[key] = val
            else:
                rows.append([float(p) for p in line.split(",")])
    return header, np.array(rows), footer


def test_wave_field_contract(tmp_path):
    out = tmp_path / "wave.csv"
    res = run("wave", "--lambda", "2", "--b0", "0", "--grid", "200x256",
              "--out", str(out))
    assert res.returncode == 0
    header, rows, footer = read_field(out)
    assert header == "x,y,re,im"
    assert rows.shape == (200 * 256, 4)
    assert footer["command"] == "wave"
    assert "quadrature_error_estimate" in footer
    pgm = (tmp_path / "wave.pgm").read_bytes()
    assert pgm.startswith(b"P5\n256 200\n255\n")
    assert len(pgm) == len(b"P5\n256 200\n255\n") + 200 * 256


def test_wave_value_near_origin(tmp_path):
    out = tmp_path / "wave.csv"
    run("wave", "--lambda", "2", "--b0", "0", "--grid", "400x128",
        "--radius", "0.04", "--out", str(out))
    _, rows, _ = read_field(out)
    r = np.hypot(rows[:, 0], rows[:, 1])
    near = rows[np.argmin(r)]
    assert abs(near[2] - 1.0) < 1e-3
    assert abs(near[3]) < 1e-3


def test_wave_phase_rate_along_axis(tmp_path):
    out = tmp_path / "wave.csv"
    run("wave", "--lambda", "2", "--b0", "0", "--grid", "200x256",
        "--out", str(out))
    _, rows, _ = read_field(out)
    axis = rows[np.abs(rows[:, 1]) < 1e-12]
    axis = axis[axis[:, 0] > 0]
    order = np.argsort(axis[:, 0])
    t = 2.0 * np.arctanh(axis[order, 0])
    phase = np.unwrap(np.arctan2(axis[order, 3], axis[order, 2]))
    rates = np.diff(phase) / np.diff(t)
    assert np.max(np.abs(rates / 2.0 - 1.0)) < 1e-2


def test_moire_report_and_determinism(tmp_path):
    args = ["moire", "--lambda", "2", "--centers", "3", "--spacing", "0.35",
            "--grid", "60x64", "--sigmas", "4,6,8", "--x", "0,0"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(*args, "--out", str(out1)).returncode == 0
    assert run(*args, "--out", str(out2)).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    rep1 = (tmp_path / "a.report.csv").read_text()
    rep2 = (tmp_path / "b.report.csv").read_text()
    assert rep1 == rep2
    data_rows = [l for l in rep1.splitlines()[1:] if not l.startswith("#")]
    assert len(data_rows) == 3  # one row per sigma


def test_euclid_field(tmp_path):
    out = tmp_path / "eu.csv"
    res = run("euclid", "--centers", "5", "--spacing", "0.5", "--grid", "41x41",
              "--out", str(out))
    assert res.returncode == 0
    header, rows, _ = read_field(out)
    assert rows.shape == (41 * 41, 4)


def test_lemma_prints_agreement():
    res = run("lemma", "--b0", "0", "--x", "0,0")
    assert res.returncode == 0
    rel = float(res.stdout.strip().splitlines()[-1].split("=")[1])
    assert rel < 1e-2


def test_transform_reports_roundtrip(tmp_path):
    out = tmp_path / "tr.csv"
    res = run("transform", "--out", str(out))
    assert res.returncode == 0
    _, _, footer = read_field(out)
    assert float(footer["roundtrip_relative_l2_error"]) < 2e-2


def test_bad_config_exit_code():
    res = run("wave", "--lambda", "2", "--grid", "banana", "--out", "x.csv")
    assert res.returncode == 2
    assert "grid" in res.stderr


def test_missing_required_parameter():
    res = run("wave", "--out", "x.csv")
    assert res.returncode == 2
    assert "lambda" in res.stderr


def test_io_error_exit_code(tmp_path):
    res = run("wave", "--lambda", "2",
              "--out", str(tmp_path / "no-such-dir" / "x.csv"))
    assert res.returncode == 3


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda=2\ngrid=30x32\nb0=0\n")
    out1 = tmp_path / "c1.csv"
    res = run("wave", "--config", str(cfg), "--out", str(out1))
    assert res.returncode == 0
    _, rows, _ = read_field(out1)
    assert rows.shape[0] == 30 * 32
    # flags beat the file
    out2 = tmp_path / "c2.csv"
    res = run("wave", "--config", str(cfg), "--grid", "20x16", "--out", str(out2))
    assert res.returncode == 0
    _, rows, _ = read_field(out2)
    assert rows.shape[0] == 20 * 16


def test_validate_suite_filter_runs_fast():
    res = run("validate", "--suite", "hypgeo")
    assert res.returncode == 0
    assert "PASS" in res.stdout
    assert "FAIL" not in res.stdout


def test_validate_detects_perturbed_kappa():
    res = run("validate", "--suite", "hft", "--kappa-scale", "1.1")
    assert res.returncode == 1
    assert "FAIL" in res.stdout


def test_validate_rejects_unknown_suite():
    res = run("validate", "--suite", "nonsense")
    assert res.returncode == 2
