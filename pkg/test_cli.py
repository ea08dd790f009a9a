#!/usr/bin/env python3
"""
Command line checks: exit codes, staged output directories and config help
"""
import io
import json
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

from src.main import EXIT_ANALYTIC, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, dispatch


def _write_config(directory: Path, name: str, data: dict) -> str:
    path = directory / name
    path.write_text(json.dumps(data))
    return str(path)


def _run(argv):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        status = dispatch(argv)
    return status, buffer.getvalue()


def test_series_check():
    with tempfile.TemporaryDirectory() as tmp:
        status, output = _run(["series-check", "--D", "2", "--a", "2.8854", "--out", tmp])
        assert status == EXIT_OK
        assert "ratio = 2.22" in output
        runs = [p for p in Path(tmp).iterdir()]
        assert len(runs) == 1 and runs[0].name.startswith("series-check-")
        saved = json.loads((runs[0] / "series.json").read_text())
        assert saved["admissible"] and abs(saved["ratio"] - 2.2253) < 1e-3


def test_missing_config_is_usage_error():
    with tempfile.TemporaryDirectory() as tmp:
        status, _ = _run(["check-kernel", "--config", str(Path(tmp) / "nope.json"), "--out", tmp, "--quiet"])
        assert status == EXIT_USAGE


def test_unknown_key_is_usage_error():
    with tempfile.TemporaryDirectory() as tmp:
        config = _write_config(Path(tmp), "bad.json", {
            "body": {"kind": "ball", "dim": 1, "size": 1.0},
            "kernel": {"family": "gaussian", "rate": 1.0},
            "kernels": [],
        })
        status, _ = _run(["check-kernel", "--config", config, "--out", tmp, "--quiet"])
        assert status == EXIT_USAGE


def test_bad_arguments_are_usage_errors():
    status, _ = _run(["series-check", "--D", "two", "--a", "3"])
    assert status == EXIT_USAGE
    with tempfile.TemporaryDirectory() as tmp:
        status, _ = _run(["series-check", "--D", "1", "--a", "3", "--out", tmp, "--quiet"])
        assert status == EXIT_USAGE


def test_check_kernel_passes():
    with tempfile.TemporaryDirectory() as tmp:
        status, _ = _run(["check-kernel", "--config", "configs/check_gaussian_1d.json", "--out", tmp, "--quiet"])
        assert status == EXIT_OK
        runs = list(Path(tmp).iterdir())
        assert len(runs) == 1 and not runs[0].name.endswith((".partial", ".failed"))
        report = json.loads((runs[0] / "report.json").read_text())
        assert report["passed"] and report["i2_passed"]
        assert (runs[0] / "annuli.csv").exists() and (runs[0] / "summary.md").exists()


def test_same_config_same_directory():
    with tempfile.TemporaryDirectory() as tmp:
        for _ in range(2):
            status, _ = _run(["check-kernel", "--config", "configs/check_imq_1d.json", "--out", tmp, "--quiet"])
            assert status == EXIT_OK
        assert len(list(Path(tmp).iterdir())) == 1


def test_irregular_family_is_analytic_failure():
    with tempfile.TemporaryDirectory() as tmp:
        config = _write_config(Path(tmp), "ratios.json", {
            "body": {"kind": "ball", "dim": 1, "size": 0.8},
            "family": {"family": "gaussian"},
            "beta": 0.5,
            "alpha_grid": [1, 2, 4, 8],
        })
        out = Path(tmp) / "out"
        status, _ = _run(["ratios", "--config", config, "--out", str(out), "--quiet"])
        assert status == EXIT_ANALYTIC
        runs = list(out.iterdir())
        assert len(runs) == 1 and runs[0].name.endswith(".failed")
        assert (runs[0] / "ratios.csv").exists()


def test_numerical_failure():
    with tempfile.TemporaryDirectory() as tmp:
        config = _write_config(Path(tmp), "flat.json", {
            "body": {"kind": "ball", "dim": 1, "size": 0.95},
            "kernel": {"family": "gaussian", "rate": 1e6},
            "beta": 0.5,
            "function": {"preset": "indicator"},
            "nodes": {"h": 0.95, "jmin": -16, "jmax": 16, "L": 0.2, "seed": 7},
        })
        out = Path(tmp) / "out"
        status, _ = _run(["interpolate", "--config", config, "--out", str(out), "--quiet"])
        assert status == EXIT_NUMERICAL
        assert [p.name.endswith(".failed") for p in out.iterdir()] == [True]


def test_series_overflow_is_numerical_failure():
    with tempfile.TemporaryDirectory() as tmp:
        status, _ = _run(["series-check", "--D", "1e30", "--a", "0.001", "--out", tmp, "--quiet"])
        assert status == EXIT_NUMERICAL
        assert [p.name.endswith(".failed") for p in Path(tmp).iterdir()] == [True]


def test_seed_override():
    with tempfile.TemporaryDirectory() as tmp:
        status, _ = _run(["nodes", "--config", "configs/nodes_kadec_1d.json", "--seed", "5", "--out", tmp, "--quiet"])
        assert status == EXIT_OK
        (run,) = Path(tmp).iterdir()
        summary = json.loads((run / "nodes.json").read_text())
        assert summary["count"] == 129 and summary["axes"][0]["seed"] == 5


def test_interpolate_reports_averaged_mismatch():
    with tempfile.TemporaryDirectory() as tmp:
        status, _ = _run(["interpolate", "--config", "configs/interpolate_averaged_1d.json", "--out", tmp, "--quiet"])
        assert status == EXIT_OK
        (run,) = Path(tmp).iterdir()
        summary = json.loads((run / "summary.json").read_text())
        assert summary["node_residual"] <= 1e-8 * 2
        assert summary["averaged_node_mismatch"] > 0
        header = (run / "evaluations.csv").read_text().splitlines()[0]
        assert header == "x1,interpolant,f,averaged"


def test_help_lists_config_keys():
    status, output = _run(["sweep", "--help"])
    assert status == EXIT_OK
    assert "alpha_grid" in output and "nodes.axes[].seed" in output
    assert "averaged_with[].h" in output


if __name__ == "__main__":
    print("🧪 Testing command line\n")
    for name, test in [(k, v) for k, v in list(globals().items()) if k.startswith("test_")]:
        test()
        print(f"✅ {name}")
