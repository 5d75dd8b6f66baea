#!/usr/bin/python
"""Test for the henonlab command line."""


import pytest  # type: ignore

import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from henonlab import __version__
from henonlab.asymptotics import SWEEP_HEADER, SweepRecord, write_sweep_csv
from henonlab.config import RunConfig
from henonlab.helper.csvio import read_table
from henonlab.main import main


def _run(config: str, out: str, *args: str) -> int:
    return main("henonlab", "--config", config, "--out", out, *args)


def _bytes(path: str) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def test_reduce_check(tmpdir, run_config) -> None:
    config = run_config()
    out = os.path.join(str(tmpdir), "out")
    assert _run(config, out, "reduce-check") == 0

    expected_hash = RunConfig.load(config).with_overrides(output=out).config_hash
    header, rows = read_table(os.path.join(out, "reduce_check.csv"))
    assert header == ["function", "m", "step", "residual"]
    exact = [r for r in rows if r[2] == "exact"]
    assert exact and all(float(r[3]) < 1e-10 for r in exact)
    with open(os.path.join(out, "reduce_check.csv")) as f:
        assert f.readline() == f"# henonlab {__version__} config-sha256={expected_hash}\n"

    header, rows = read_table(os.path.join(out, "reduce_slopes.csv"))
    assert header == ["function", "m", "slope"]
    assert rows


def test_reduce_check_rejects_hyperplane(tmpdir, run_config) -> None:
    config = run_config(case="hyperplane", dimension=3)
    assert _run(config, str(tmpdir), "reduce-check") == 2


def test_solve_partial(tmpdir, run_config) -> None:
    config = run_config(solver={"max_iter": 1, "starts": ["bump"]})
    out = str(tmpdir)
    assert _run(config, out, "--allow-partial", "solve") == 0

    header, rows = read_table(os.path.join(out, "solve.csv"))
    row = dict(zip(header, rows[0]))
    assert row["case"] == "partial_henon"
    assert row["dimension"] == "2"
    assert row["converged"] == "false"
    assert row["iterations"] == "1"
    assert row["start"] == "bump"

    header, rows = read_table(os.path.join(out, "field.csv"))
    assert header == ["rho", "sigma", "value"]
    assert len(rows) == 24 * 16


def test_solve_not_converged(tmpdir, run_config) -> None:
    config = run_config(solver={"max_iter": 1, "starts": ["bump"]})
    assert _run(config, str(tmpdir), "solve") == 1


def test_solve_needs_alpha(tmpdir, run_config) -> None:
    assert _run(run_config(alpha=None), str(tmpdir), "solve") == 2


def test_sweep_is_deterministic(tmpdir, run_config) -> None:
    config = run_config(
        alpha=None,
        alphas=[10.0, 20.0, 30.0],
        solver={"max_iter": 30, "starts": ["bump", "random"]},
        threads=2,
    )
    out = str(tmpdir)
    names = ("sweep.csv", "fits.csv", "blowup.dat", "gap.dat", "normalized_quotient.dat")

    assert _run(config, out, "--allow-partial", "--seed", "4", "sweep") == 0
    first = {name: _bytes(os.path.join(out, name)) for name in names}
    assert _run(config, out, "--allow-partial", "--seed", "4", "sweep") == 0
    second = {name: _bytes(os.path.join(out, name)) for name in names}
    assert first == second

    header, rows = read_table(os.path.join(out, "sweep.csv"))
    assert tuple(header) == SWEEP_HEADER
    assert [float(r[0]) for r in rows] == [10.0, 20.0, 30.0]


def test_sweep_reports_failures(tmpdir, run_config) -> None:
    config = run_config(alphas=[30.0], solver={"max_iter": 1, "starts": ["bump"]})
    assert _run(config, str(tmpdir), "sweep") == 1
    _, rows = read_table(os.path.join(str(tmpdir), "sweep.csv"))
    assert [float(r[0]) for r in rows] == [30.0]


def test_sweep_needs_alphas(tmpdir, run_config) -> None:
    assert _run(run_config(alpha=None), str(tmpdir), "sweep") == 2


def test_fit(tmpdir, run_config) -> None:
    out = str(tmpdir)
    records = [
        SweepRecord(a, a, a**3, 7.0 * a**2, 0.9, 0.9, 0.1 * a, 10, 1e-8, True)
        for a in (40.0, 80.0, 160.0)
    ]
    write_sweep_csv(records, os.path.join(out, "sweep.csv"))
    assert _run(run_config(), out, "fit") == 0

    _, rows = read_table(os.path.join(out, "fits.csv"))
    fits = {r[0]: float(r[1]) for r in rows}
    assert fits["blowup"] == pytest.approx(2.0)
    assert fits["quotient"] == pytest.approx(1.0)
    assert fits["energy"] == pytest.approx(3.0)


def test_fit_without_data(tmpdir, run_config) -> None:
    out = str(tmpdir)
    path = os.path.join(out, "other.csv")
    write_sweep_csv([], path)
    assert _run(run_config(), out, "fit", "--sweep", path) == 1
    assert _run(run_config(), out, "fit", "--sweep", path + ".missing") == 3


def test_limit(tmpdir, run_config) -> None:
    config = run_config(limit={"box": [6.0, 12.0], "resolutions": [16, 32], "check_truncation": False})
    out = str(tmpdir)
    assert _run(config, out, "limit") == 0
    header, rows = read_table(os.path.join(out, "limit.csv"))
    row = dict(zip(header, rows[0]))
    assert float(row["gamma"]) == 0.5
    assert float(row["value"]) > 0.0
    assert row["doubled_value"] == "nan"
    assert row["converged"] == "true"


def test_limit_truncation(tmpdir, run_config) -> None:
    config = run_config(limit={"box": [1.0, 2.0], "resolutions": [9, 17]})
    out = str(tmpdir)
    assert _run(config, out, "limit") == 1
    header, rows = read_table(os.path.join(out, "limit.csv"))
    row = dict(zip(header, rows[0]))
    assert float(row["truncation_change"]) > 0.01


# Errors before any computation:


def test_malformed_config(tmpdir) -> None:
    path = os.path.join(str(tmpdir), "run.json")
    with open(path, "w") as f:
        f.write("{\n")
    assert _run(path, str(tmpdir), "solve") == 2


def test_missing_config(tmpdir) -> None:
    assert _run(os.path.join(str(tmpdir), "none.json"), str(tmpdir), "solve") == 3


def test_bad_threads(tmpdir, run_config) -> None:
    assert _run(run_config(), str(tmpdir), "--threads", "0", "solve") == 2


def test_negative_seed(tmpdir, run_config) -> None:
    assert _run(run_config(), str(tmpdir), "--seed", "-1", "solve") == 2


def test_output_directory_is_a_file(tmpdir, run_config) -> None:
    blocker = os.path.join(str(tmpdir), "file")
    with open(blocker, "w") as f:
        f.write("x")
    assert _run(run_config(), os.path.join(blocker, "out"), "solve") == 2


def test_missing_config_flag() -> None:
    with pytest.raises(SystemExit):
        main("henonlab", "solve")
