"""Batch front end: validation, end-to-end runs, determinism, exit codes."""

import csv
import hashlib
import json
from pathlib import Path

import pytest

from modkinetic import cli
from modkinetic.config import validate_config

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"

GOOD_SPECTRUM = {
    "command": "spectrum",
    "model": {"m": 1.0, "a": 0.1, "variant": "GRADIENT"},
    "grid": {"x_min": -8.0, "x_max": 8.0, "n": 301, "boundary": "DIRICHLET"},
    "potential": {"kind": "HARMONIC", "spring": 1.0, "center": 0.0},
    "spectrum": {"count": 3},
}


def write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class TestValidate:
    def test_clean_config_passes(self):
        assert validate_config(GOOD_SPECTRUM) == []

    def test_negative_coupling_flagged_at_path(self):
        doc = json.loads(json.dumps(GOOD_SPECTRUM))
        doc["model"]["a"] = -0.1
        violations = validate_config(doc)
        assert any(v.startswith("model.a") for v in violations)

    def test_missing_grid_size_flagged(self):
        doc = json.loads(json.dumps(GOOD_SPECTRUM))
        del doc["grid"]["n"]
        violations = validate_config(doc)
        assert any(v.startswith("grid.n") for v in violations)

    def test_unknown_key_rejected(self):
        doc = json.loads(json.dumps(GOOD_SPECTRUM))
        doc["grid"]["dx"] = 0.01
        violations = validate_config(doc)
        assert any("grid.dx" in v and "unknown" in v for v in violations)

    def test_overlapping_segments_flagged(self):
        doc = {
            "command": "scatter",
            "model": {"m": 1.0, "a": 0.5, "variant": "GAUGE"},
            "potential": {
                "kind": "PIECEWISE",
                "segments": [
                    {"x_left": "-inf", "x_right": 1.0, "v": 0.0},
                    {"x_left": 0.5, "x_right": "inf", "v": 1.5},
                ],
            },
            "scatter": {"energies": [0.5]},
        }
        violations = validate_config(doc)
        assert any(v.startswith("potential.segments") for v in violations)

    def test_validate_cli_exit_codes(self, tmp_path, capsys):
        good = write_config(tmp_path, GOOD_SPECTRUM, "good.json")
        assert cli.main(["validate", "--config", str(good)]) == 0
        bad_doc = json.loads(json.dumps(GOOD_SPECTRUM))
        bad_doc["model"]["a"] = -0.5
        bad = write_config(tmp_path, bad_doc, "bad.json")
        assert cli.main(["validate", "--config", str(bad)]) == 1
        err = capsys.readouterr().err
        assert "model.a" in err


class TestRun:
    def test_spectrum_end_to_end(self, tmp_path):
        cfg = write_config(tmp_path, GOOD_SPECTRUM)
        out = tmp_path / "out"
        assert cli.main(["spectrum", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "spectrum.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["command"] == "spectrum"
        assert manifest["summary"]["max_rel_diff_vs_analytic"] < 1e-3
        rows = list(csv.DictReader(open(out / "spectrum.csv")))
        assert len(rows) == 3
        assert float(rows[0]["E_analytic"]) == pytest.approx(0.4756246098625196)

    def test_command_mismatch_is_config_error(self, tmp_path, capsys):
        cfg = write_config(tmp_path, GOOD_SPECTRUM)
        code = cli.main(["density", "--config", str(cfg), "--out", str(tmp_path / "o")])
        assert code == 1
        assert "command" in capsys.readouterr().err

    def test_solver_error_exit_code(self, tmp_path, capsys):
        doc = {
            "command": "wkb",
            "model": {"m": 1.0, "a": 0.5, "variant": "GAUGE"},
            "grid": {"x_min": 0.0, "x_max": 8.0, "n": 101, "boundary": "DIRICHLET"},
            "potential": {"kind": "CONSTANT", "v0": 0.0},
            "wkb": {"energy": 5.0, "reference_point": 0.0},  # outside the band
        }
        cfg = write_config(tmp_path, doc)
        code = cli.main(["wkb", "--config", str(cfg), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "solver error" in capsys.readouterr().err

    def test_threaded_sweep_matches_serial(self, tmp_path):
        cfg = CONFIG_DIR / "scatter_step_partial.json"
        out1, out2 = tmp_path / "serial", tmp_path / "threaded"
        assert cli.main(["scatter", "--config", str(cfg), "--out", str(out1)]) == 0
        assert (
            cli.main(
                ["scatter", "--config", str(cfg), "--out", str(out2), "--threads", "4"]
            )
            == 0
        )
        assert (out1 / "scatter.csv").read_bytes() == (out2 / "scatter.csv").read_bytes()


def shipped_configs():
    return sorted(CONFIG_DIR.glob("*.json"))


@pytest.mark.parametrize("config_path", shipped_configs(), ids=lambda p: p.stem)
def test_shipped_config_runs_end_to_end(config_path, tmp_path):
    command = json.loads(config_path.read_text())["command"]
    out = tmp_path / "out"
    assert cli.main([command, "--config", str(config_path), "--out", str(out)]) == 0
    assert (out / f"{command}.csv").exists()
    assert (out / "manifest.json").exists()


def test_byte_identical_reruns(tmp_path):
    cfg = CONFIG_DIR / "figure1b.json"
    digests = []
    for run_dir in ("first", "second"):
        out = tmp_path / run_dir
        assert cli.main(["density", "--config", str(cfg), "--out", str(out)]) == 0
        digests.append(
            (
                hashlib.sha256((out / "density.csv").read_bytes()).hexdigest(),
                hashlib.sha256((out / "manifest.json").read_bytes()).hexdigest(),
            )
        )
    assert digests[0] == digests[1]
