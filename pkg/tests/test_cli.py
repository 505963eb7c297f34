import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest


def run_cli(*argv):
    return subprocess.run([sys.executable, "-m", "radialprop", *argv],
                          capture_output=True, text=True)


def write_config(tmp_path, text, name="run.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


EVOLVE_FAST = """
[run]
command = evolve
times = 0.1
output = {out}

[packet]
r0 = 5.0
sigma = 0.5

[grid]
r_max = 10.0
points = 512
"""


def test_evolve_writes_tables(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, EVOLVE_FAST.format(out=out))
    proc = run_cli("evolve", "--config", cfg)
    assert proc.returncode == 0, proc.stderr

    header, rows = read_csv(out / "u_t0.1.csv")
    assert header == ["r", "re_u", "im_u", "abs2_u"]
    assert len(rows) == 512
    r = np.array([float(row[0]) for row in rows])
    assert np.array_equal(r, np.linspace(0.0, 10.0, 512))
    re = np.array([float(row[1]) for row in rows])
    im = np.array([float(row[2]) for row in rows])
    ab = np.array([float(row[3]) for row in rows])
    assert np.allclose(ab, re * re + im * im, rtol=1e-12, atol=1e-300)

    header, rows = read_csv(out / "diagnostics.csv")
    assert header == ["t", "p_inner", "p_outer", "mean_r", "rms_width", "norm"]
    assert len(rows) == 1
    t, p_in, p_out, mean_r, width, norm = (float(v) for v in rows[0])
    assert t == 0.1
    assert abs(norm - 1.0) < 1e-8
    assert abs(p_in + p_out - 1.0) < 1e-12
    assert abs(mean_r - 5.0) < 0.1


def test_evolve_byte_deterministic(tmp_path):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        cfg = write_config(tmp_path, EVOLVE_FAST.format(out=out),
                           name=f"run_{name}.ini")
        proc = run_cli("evolve", "--config", cfg)
        assert proc.returncode == 0, proc.stderr
        outs.append(out)
    for stem in ("u_t0.1.csv", "diagnostics.csv"):
        assert (outs[0] / stem).read_bytes() == (outs[1] / stem).read_bytes()


def test_time_override_controls_outputs(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, EVOLVE_FAST.format(out=out))
    proc = run_cli("evolve", "--config", cfg, "--t", "0.2")
    assert proc.returncode == 0, proc.stderr
    assert (out / "u_t0.2.csv").exists()
    assert not (out / "u_t0.1.csv").exists()


def test_missing_config_is_exit_2(tmp_path):
    proc = run_cli("evolve", "--config", str(tmp_path / "absent.ini"))
    assert proc.returncode == 2
    assert "config error" in proc.stderr


def test_invalid_times_is_exit_2(tmp_path):
    cfg = write_config(tmp_path, "[run]\ncommand = evolve\ntimes =\n")
    proc = run_cli("evolve", "--config", cfg)
    assert proc.returncode == 2


def test_oscillation_budget_is_exit_3(tmp_path):
    text = """
[run]
command = evolve
times = 0.005
output = {out}

[grid]
r_max = 20.0
points = 128
"""
    cfg = write_config(tmp_path, text.format(out=tmp_path / "out"))
    proc = run_cli("evolve", "--config", cfg)
    assert proc.returncode == 3
    assert "numerical failure" in proc.stderr


def test_green_json(tmp_path):
    out = tmp_path / "out"
    text = """
[run]
command = green
output = {out}

[grid]
r_max = 8.0
points = 200

[green]
rho = 2.0
"""
    cfg = write_config(tmp_path, text.format(out=out))
    proc = run_cli("green", "--config", cfg, "--format", "json",
                   "--dim", "3", "--t", "0.5")
    assert proc.returncode == 0, proc.stderr
    payload = json.loads((out / "green_t0.5.json").read_text())
    assert payload["columns"] == ["r", "rho", "re_g", "im_g", "abs_g"]
    assert len(payload["rows"]) == 200
    first = payload["rows"][0]
    assert first[0] == 0.0 and first[1] == 2.0
    assert first[2] == 0.0 and first[3] == 0.0 and first[4] == 0.0
    assert all(row[1] == 2.0 for row in payload["rows"])


DALEMBERT_SWEEP = """
[run]
command = dalembert
times = -1.0, 2.0
output = {out}

[dalembert]
r_min = 0.0
r_max = 3.0
r_step = 0.5
"""


def test_dalembert_sweep(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, DALEMBERT_SWEEP.format(out=out))
    proc = run_cli("dalembert", "--config", cfg)
    assert proc.returncode == 0, proc.stderr

    header, rows = read_csv(out / "dalembert.csv")
    assert header == ["t", "r", "g2_closed", "g2_spectral", "region"]
    table = {(row[0], row[1]): row for row in rows}
    assert len(rows) == 2 * 7

    before = table[("-1.0", "0.5")]
    assert before[2] == "0.0" and before[3] == "0.0"
    assert before[4] == "before_front"

    front = table[("2.0", "2.0")]
    assert front[2] == "nan" and front[3] == "nan"
    assert front[4] == "on_front"

    inside = table[("2.0", "1.0")]
    closed = float(inside[2])
    assert abs(closed - 1.0 / (2.0 * math.pi * math.sqrt(3.0))) < 1e-12
    assert abs(float(inside[3]) - closed) / closed < 1e-3
    assert inside[4] == "inside"

    outside = table[("2.0", "3.0")]
    assert float(outside[2]) == 0.0
    assert abs(float(outside[3])) < 1e-3
    assert outside[4] == "before_front"

    header, rows = read_csv(out / "dalembert_smeared.csv")
    assert header == ["t", "f_name", "value"]
    smeared = {(row[0], row[1]): float(row[2]) for row in rows}
    assert smeared[("-1.0", "constant")] == 0.0
    assert smeared[("2.0", "constant")] == 2.0
    assert abs(smeared[("2.0", "inverse")] - 1.0) < 1e-15


def test_verify_single_check(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path,
                       f"[run]\ncommand = verify\noutput = {out}\n")
    proc = run_cli("verify", "--config", cfg, "--only", "retarded_causality")
    assert proc.returncode == 0, proc.stderr
    assert "retarded_causality: pass" in proc.stdout
    report = json.loads((out / "verify_report.json").read_text())
    assert len(report) == 1
    assert report[0]["check_name"] == "retarded_causality"
    assert report[0]["status"] == "pass"


def test_verify_tolerance_override_fails(tmp_path):
    out = tmp_path / "out"
    text = f"""
[run]
command = verify
output = {out}

[verify]
only = quadrature_polynomial
tolerance_override = 1e-20
"""
    cfg = write_config(tmp_path, text)
    proc = run_cli("verify", "--config", cfg)
    assert proc.returncode == 1
    assert "fail" in proc.stdout
    report = json.loads((out / "verify_report.json").read_text())
    assert report[0]["status"] == "fail"
    assert report[0]["tolerance"] == 1e-20


def test_verify_unknown_check_is_exit_2(tmp_path):
    cfg = write_config(tmp_path, "[run]\ncommand = verify\n")
    proc = run_cli("verify", "--config", cfg, "--only", "no_such_check")
    assert proc.returncode == 2


@pytest.mark.parametrize("argv", [
    (),
    ("evolve",),
    ("frobnicate", "--config", "x.ini"),
])
def test_usage_errors(argv):
    proc = run_cli(*argv)
    assert proc.returncode == 2
