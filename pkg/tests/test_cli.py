"""File formats, named substreams, error taxonomy, figure rendering,
and the three CLI subcommands."""

import json
import shutil
import subprocess

import numpy as np
import pytest

from wavecontrast import errors
from wavecontrast.cli import WORKERS_ENV, _default_workers, main
from wavecontrast.engine import TestConfig, run_test
from wavecontrast.experiment import CellResult, read_profile_csv, read_results_csv
from wavecontrast.figures import save_fraction_figure, save_profile_figure, save_test_figure
from wavecontrast.io import (
    MIN_SERIES_LENGTH,
    SeriesFormatError,
    read_json_report,
    read_series,
    write_json_report,
    write_series,
)
from wavecontrast.rng import derive_seed, substream

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _assert_png(path):
    assert path.exists()
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_series_round_trip(tmp_path):
    x = substream(0, "io").standard_normal(128)
    p = tmp_path / "x.csv"
    write_series(p, x)
    lines = p.read_text().splitlines()
    assert lines[0] == "x"
    assert len(lines) == 129
    np.testing.assert_array_equal(read_series(p), x)


def test_read_series_tolerates_header_comments_blanks(tmp_path):
    p = tmp_path / "x.csv"
    body = "\n".join(str(float(i)) for i in range(MIN_SERIES_LENGTH))
    p.write_text(f"value\n# a comment\n\n{body}\n")
    x = read_series(p)
    assert len(x) == MIN_SERIES_LENGTH
    assert x[3] == 3.0


def test_read_series_rejects_junk_after_values(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("1.0\n2.0\nbogus\n")
    with pytest.raises(SeriesFormatError, match="bogus"):
        read_series(p)


def test_read_series_rejects_short_input(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("x\n" + "\n".join("1.5" for _ in range(MIN_SERIES_LENGTH - 1)) + "\n")
    with pytest.raises(errors.SeriesTooShortError):
        read_series(p)


def test_json_report_round_trip(tmp_path):
    p = tmp_path / "r.json"
    payload = {"reject": True, "statistic": 1.25, "argmax": {"s_p": 3}}
    write_json_report(p, payload)
    assert read_json_report(p) == payload
    assert p.read_text().endswith("\n")


def test_substreams_are_deterministic_and_label_sensitive():
    a = substream(7, "x", 3).standard_normal(8)
    b = substream(7, "x", 3).standard_normal(8)
    np.testing.assert_array_equal(a, b)
    c = substream(7, "x", 4).standard_normal(8)
    d = substream(8, "x", 3).standard_normal(8)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    assert derive_seed(0, "a") == derive_seed(0, "a")
    assert derive_seed(0, "a") != derive_seed(0, "b")
    assert derive_seed(0, "a") != derive_seed(1, "a")
    assert 0 <= derive_seed(0, "a") < 2**64


def test_error_taxonomy():
    specific = [
        errors.InvalidScaleError, errors.SeriesTooShortError,
        errors.InfeasibleConfigError, errors.SamplingFailureError,
        errors.NoDisjointPairsError, errors.InvalidPairError,
        errors.OrderTooLargeError, errors.DegenerateSeriesError,
        errors.DegenerateBootstrapError, errors.InvalidLevelError,
        errors.InvalidSpectrumError, errors.UnknownModelError,
        errors.InvalidPlanError, SeriesFormatError,
    ]
    for exc in specific:
        assert issubclass(exc, errors.WaveContrastError)
    assert issubclass(errors.WaveContrastError, Exception)


def test_cli_simulate_writes_reproducible_series(tmp_path, capsys):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["simulate", "S1", "--T", "512", "--seed", "11", "--out", str(p1)]) == 0
    out = capsys.readouterr().out
    assert "wrote 512 observations from S1" in out
    assert len(p1.read_text().splitlines()) == 513
    # lowercase tags are accepted and the bytes are identical
    assert main(["simulate", "s1", "--T", "512", "--seed", "11", "--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_cli_simulate_unknown_model(tmp_path, capsys):
    rc = main(["simulate", "S99", "--T", "128", "--out", str(tmp_path / "x.csv")])
    assert rc == 2
    assert "unknown model" in capsys.readouterr().err


def _simulate(tmp_path, tag):
    p = tmp_path / f"{tag.lower()}.csv"
    assert main(["simulate", tag, "--T", "512", "--seed", "11", "--out", str(p)]) == 0
    return p


def test_cli_test_accepts_stationary_series(tmp_path, capsys):
    p = _simulate(tmp_path, "S1")
    rc = main(["test", str(p), "--seed", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "accept: statistic 2.3424 vs critical value 3.9001" in out
    assert "(alpha 0.05, D 130, J_star 4)" in out

    report = read_json_report(tmp_path / "s1.csv.report.json")
    assert set(report) == {
        "reject", "statistic", "critical_value", "alpha", "D", "J_star",
        "M", "m_T", "B", "seed", "argmax", "per_scale_max",
        "degenerate_cells", "runtime_ms",
    }
    assert report["reject"] is False
    assert report["statistic"] == pytest.approx(2.3423938017566117, rel=1e-12)
    assert report["critical_value"] == pytest.approx(3.9000977805637125, rel=1e-12)
    assert (report["D"], report["J_star"], report["M"], report["m_T"], report["B"]) == (130, 4, 40, 64, 200)
    assert report["seed"] == 3
    assert set(report["argmax"]) == {"s_p", "e_p", "s_q", "e_q", "scale"}
    assert len(report["per_scale_max"]) == 4
    assert report["degenerate_cells"] == 0
    assert report["runtime_ms"] > 0
    _assert_png(tmp_path / "s1.csv.report.png")

    # the report mirrors an in-process run exactly
    res = run_test(read_series(p), TestConfig(master_seed=3), keep_tables=False)
    assert report["statistic"] == res.statistic
    assert report["argmax"]["s_p"] == res.argmax.s_p


def test_cli_test_rejects_switching_series(tmp_path, capsys):
    p = _simulate(tmp_path, "N1")
    rc = main(["test", str(p), "--alpha", "0.1", "--seed", "3"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "reject: statistic 9.9737 vs critical value 3.7289" in out
    report = read_json_report(tmp_path / "n1.csv.report.json")
    assert report["reject"] is True
    assert report["statistic"] == pytest.approx(9.973677374356987, rel=1e-12)
    assert report["argmax"]["scale"] == -1


def test_cli_test_custom_report_path_and_no_figures(tmp_path):
    p = _simulate(tmp_path, "S1")
    rp = tmp_path / "out" / "verdict.json"
    rp.parent.mkdir()
    rc = main(["test", str(p), "--seed", "3", "--report", str(rp), "--no-figures"])
    assert rc == 0
    assert rp.exists()
    assert not rp.with_suffix(".png").exists()
    assert not (tmp_path / "s1.csv.report.json").exists()


def test_cli_test_error_paths(tmp_path, capsys):
    assert main(["test", str(tmp_path / "absent.csv")]) == 2
    assert "error:" in capsys.readouterr().err

    const = tmp_path / "const.csv"
    write_series(const, np.full(128, 2.0))
    assert main(["test", str(const)]) == 2
    assert "constant" in capsys.readouterr().err

    junk = tmp_path / "junk.csv"
    junk.write_text("1.0\nnot-a-number\n")
    assert main(["test", str(junk)]) == 2


def test_cli_experiment_tiny_grid(tmp_path, capsys):
    out_dir = tmp_path / "exp"
    rc = main(["experiment", "--suite", "power", "--models", "N1",
               "--T", "128", "--alphas", "0.1", "--R", "4", "--B", "32",
               "--seed", "5", "--out-dir", str(out_dir)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "N1 T=128 alpha=0.1 [normal]:" in out
    assert "wrote" in out

    results = read_results_csv(out_dir / "power_normal.csv")
    assert len(results) == 1
    row = results[0]
    assert (row["model"], row["T"], row["alpha"]) == ("N1", 128, 0.1)
    assert row["fraction"] == row["rejections"] / row["R"]

    prof = read_profile_csv(out_dir / "profile_N1_T128.csv")
    assert set(prof) == {"t", "weight_scheme_i", "weight_scheme_ii"}
    assert all(len(v) == 128 for v in prof.values())

    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["suite"] == "power"
    assert summary["R"] == 4
    assert summary["master_seed"] == 5
    assert "workers" not in summary

    _assert_png(out_dir / "power_normal.png")
    _assert_png(out_dir / "profile_N1_T128.png")


def test_workers_env_default(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert _default_workers() == 3
    monkeypatch.setenv(WORKERS_ENV, "0")
    assert _default_workers() == 1
    monkeypatch.setenv(WORKERS_ENV, "junk")
    assert _default_workers() == 1
    monkeypatch.delenv(WORKERS_ENV)
    assert _default_workers() == 1


def test_console_script_help():
    exe = shutil.which("wavecontrast")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for word in ("test", "simulate", "experiment"):
        assert word in proc.stdout


def test_figure_helpers_render_png(tmp_path):
    x = substream(0, "fig").standard_normal(128)
    res = run_test(x, TestConfig(B=20, master_seed=1), keep_tables=False)
    p1 = tmp_path / "test.png"
    save_test_figure(x, res, p1)
    _assert_png(p1)

    t = np.arange(64)
    p2 = tmp_path / "profile.png"
    save_profile_figure(t, np.ones(64), np.full(64, 0.5), p2, "profiles")
    _assert_png(p2)

    cells = [
        CellResult(model="S1", T=128, alpha=0.05, innovation="normal",
                   rejections=1, R=4, fraction=0.25, error=None, mean_runtime_ms=1.0),
        CellResult(model="N1", T=128, alpha=0.05, innovation="normal",
                   rejections=4, R=4, fraction=1.0, error=None, mean_runtime_ms=1.0),
    ]
    p3 = tmp_path / "fractions.png"
    save_fraction_figure(cells, p3, "rejection fractions")
    _assert_png(p3)
