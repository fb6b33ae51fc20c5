import csv
import hashlib
import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from cournot_energy.cli import main

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"
SWEEPS = [("fig1", "sweep-energy"), ("fig2", "sweep-ratio"), ("fig3", "sweep-scale")]


def read_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    return rows[0], rows[1:]


@pytest.mark.parametrize("preset, command", SWEEPS)
def test_sweeps_match_golden(tmp_path, preset, command):
    out = tmp_path / "out.csv"
    assert main([command, "--preset", preset, "--out", str(out)]) == 0
    header, rows = read_csv(out.read_text())
    g_header, g_rows = read_csv((GOLDEN / f"{preset}.csv").read_text())
    assert header == g_header and len(rows) == len(g_rows)
    got = np.array([[float(x) for x in r[:-1]] for r in rows])
    want = np.array([[float(x) for x in r[:-1]] for r in g_rows])
    np.testing.assert_allclose(got, want, rtol=1e-12, equal_nan=True)
    assert [r[-1] for r in rows] == [r[-1] for r in g_rows]


@pytest.mark.parametrize("preset, command", SWEEPS)
def test_sweeps_are_byte_deterministic(tmp_path, preset, command):
    digests = set()
    for k in range(2):
        out = tmp_path / f"run{k}.csv"
        main([command, "--preset", preset, "--out", str(out)])
        digests.add(hashlib.sha256(out.read_bytes()).hexdigest())
    assert len(digests) == 1


def test_sweep_to_stdout(capsys):
    assert main(["sweep-ratio", "--preset", "fig2"]) == 0
    header, rows = read_csv(capsys.readouterr().out)
    assert header == ["n_q_over_n_c", "E_q", "E_c", "flag"] and len(rows) == 20


def test_csv_carries_config(tmp_path):
    out = tmp_path / "o.csv"
    main(["sweep-energy", "--preset", "fig1", "--out", str(out)])
    meta = [ln for ln in out.read_text().splitlines() if ln.startswith("# config: ")]
    assert json.loads(meta[0][len("# config: "):])["market"]["theta_q"] == 3


def test_equilibrium_report(capsys):
    assert main(["equilibrium", "--preset", "fig1"]) == 0
    text = capsys.readouterr().out
    assert "q_q* = 1.30434782609" in text and "oracle residual" in text


def test_threshold_preset(capsys, tmp_path):
    out = tmp_path / "t.csv"
    assert main(["threshold", "--preset", "fig3", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "rydberg: a* = " in text and "ion_trap: a* = " in text
    header, rows = read_csv(out.read_text())
    a_ion = float(rows[0][header.index("a_star_ion_trap")])
    assert 1e11 <= a_ion <= 1e13


def test_threshold_no_crossing_exit_code(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"hardware": {"quantum_kind": "rydberg", "bracket": [1e2, 1e3]}}))
    assert main(["threshold", "--preset", "fig3", "--config", str(f)]) == 4
    assert "no energy crossing" in capsys.readouterr().err


def test_degenerate_exit_code(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"market": {"n_q": 2, "n_c": 2, "theta_q": 0.5, "theta_c": 0.5,
                                        "gamma_qq": 1, "gamma_cc": 1, "gamma_qc": 1}}))
    assert main(["equilibrium", "--preset", "fig1", "--config", str(f)]) == 3
    assert "degenerate" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["equilibrium"],
    ["sweep-scale", "--preset", "fig1"],
    ["verify", "--trials", "0"],
])
def test_config_error_exit_code(argv):
    assert main(argv) == 2


def test_bad_json_exit_code(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text("{ nope")
    assert main(["equilibrium", "--config", str(f)]) == 2
    assert "line 1 column" in capsys.readouterr().err


def test_verify_small(capsys):
    assert main(["verify", "--trials", "20", "--seed", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert sum(ln.startswith("PASS") for ln in lines) == 3


def test_verify_output_is_seed_deterministic(capsys):
    def strip(text):
        return [ln.split(" (")[0] for ln in text.splitlines()]
    main(["verify", "--trials", "30", "--seed", "7"])
    first = strip(capsys.readouterr().out)
    main(["verify", "--trials", "30", "--seed", "7"])
    assert strip(capsys.readouterr().out) == first


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "cournot_energy", "--version"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip().endswith("0.1.0")
