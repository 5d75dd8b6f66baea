# -*- coding: utf-8 -*-
"""Test infrastructure for henonlab tests."""


import pytest  # type: ignore

import json
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from henonlab.mesh import BallPolar, HalfSpaceBox, build_grid
from henonlab.model import ProblemSpec
from henonlab.solver import SolverSettings


@pytest.fixture()
def small_ball():
    """A coarse uniform unit ball grid in R^3."""
    return build_grid(BallPolar(1.0), 3, (24, 16))


@pytest.fixture()
def small_box():
    """A coarse half-space box in R^3."""
    return build_grid(HalfSpaceBox(6.0, 12.0), 3, (16, 32))


@pytest.fixture()
def partial_spec():
    return ProblemSpec.partial_henon(2, 3.0, 40.0)


@pytest.fixture()
def hyperplane_spec():
    return ProblemSpec.hyperplane(3, 3.0, 40.0)


@pytest.fixture()
def fast_settings():
    """Settings for the coarse grids: one start, enough iterations."""
    return SolverSettings(max_iter=3000, starts=SolverSettings().starts[:1])


@pytest.fixture()
def run_config(tmpdir):
    """Write a small run configuration and return its path."""

    def _write(**overrides) -> str:
        values = {
            "case": "partial_henon",
            "dimension": 2,
            "p": 3.0,
            "alpha": 20.0,
            "grid": {"resolutions": [24, 16], "grading": 1.0},
            "limit": {"box": [6.0, 12.0], "resolutions": [16, 32]},
            "solver": {"max_iter": 3000, "starts": ["bump"]},
            "reduce_check": {"samples": 50},
        }
        values.update(overrides)
        path = os.path.join(str(tmpdir), "run.json")
        with open(path, "w") as f:
            json.dump(values, f, indent=2)
        return path

    return _write


@pytest.fixture()
def slow():
    """Skip unless HENONLAB_SLOW_TESTS is set, these solves take minutes."""
    if not os.getenv("HENONLAB_SLOW_TESTS"):
        pytest.skip("Set HENONLAB_SLOW_TESTS to run the full sweeps.")
