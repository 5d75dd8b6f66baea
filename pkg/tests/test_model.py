#!/usr/bin/python
"""Test for problem specifications and exponents."""


import pytest  # type: ignore

import math
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from henonlab.exceptions import (
    BadDimension,
    BadWeightExponent,
    ExponentOutOfRange,
)
from henonlab.model import (
    ProblemCase,
    ProblemSpec,
    SymmetryClass,
    critical_exponent,
    ensure_valid,
    exponents,
    gamma_scaling_exponent,
    limit_gamma,
    validate,
)


@pytest.mark.parametrize(
    ("spec", "status", "error"),
    [
        pytest.param(ProblemSpec.partial_henon(2, 3.0, 50.0), "ok", None, id="ok"),
        pytest.param(
            ProblemSpec.partial_henon(2, 2.0, 50.0),
            "error",
            ExponentOutOfRange,
            id="p=2",
        ),
        pytest.param(
            ProblemSpec.hyperplane(3, 6.0, 50.0),
            "error",
            ExponentOutOfRange,
            id="critical p",
        ),
        pytest.param(
            ProblemSpec.full_henon(1, 3.0, 50.0), "error", BadDimension, id="m=1"
        ),
        pytest.param(
            ProblemSpec.hyperplane(2, 3.0, 50.0), "error", BadDimension, id="N=2"
        ),
        pytest.param(
            ProblemSpec.hyperplane(3, 3.0, -1.0),
            "error",
            BadWeightExponent,
            id="negative alpha",
        ),
        pytest.param(
            ProblemSpec.partial_henon(2, 3.0, 2.0),
            "error",
            BadWeightExponent,
            id="reduced alpha=2",
        ),
        pytest.param(
            ProblemSpec.hyperplane(3, 3.0, 4.0), "warning", None, id="small alpha"
        ),
        pytest.param(
            ProblemSpec.full_henon(2, 3.0, 3.0), "warning", None, id="reduced alpha=3"
        ),
    ],
)
def test_validate(spec, status, error) -> None:
    result = validate(spec)
    assert result.status == status
    if error is not None:
        assert isinstance(result.errors[0], error)
        with pytest.raises(error):
            ensure_valid(spec)


@pytest.mark.parametrize(
    ("p", "alpha"),
    [
        pytest.param(math.nan, 10.0, id="nan p"),
        pytest.param(math.inf, 10.0, id="inf p"),
        pytest.param(3.0, math.nan, id="nan alpha"),
        pytest.param(-math.inf, -math.inf, id="both infinite"),
        pytest.param(1e300, 1e300, id="huge"),
    ],
)
def test_validate_is_total(p, alpha) -> None:
    for case in ProblemCase:
        result = validate(ProblemSpec.create(case, 2, p, alpha))
        assert result.status in ("ok", "warning", "error")


@pytest.mark.parametrize(
    ("spec", "blowup", "beta", "energy"),
    [
        pytest.param(ProblemSpec.partial_henon(2, 3.0, 40.0), 2.0, 1.0, 3.0, id="m=2 p=3"),
        pytest.param(ProblemSpec.hyperplane(3, 4.0, 40.0), 1.0, 0.5, 1.0, id="N=3 p=4"),
    ],
)
def test_exponents(spec, blowup, beta, energy) -> None:
    e = exponents(spec)
    assert e.blowup == pytest.approx(blowup)
    assert e.quotient_beta == pytest.approx(beta)
    assert e.energy_gamma == pytest.approx(energy)


@pytest.mark.parametrize("p", [2.001, 2.5, 3.0, 3.7, 4.5, 5.9])
def test_exponent_identity(p) -> None:
    e = exponents(ProblemSpec.hyperplane(3, p, 40.0))
    assert e.energy_gamma * (p - 2.0) == pytest.approx(e.quotient_beta * p, rel=1e-14)


def test_blowup_pole() -> None:
    near = exponents(ProblemSpec.hyperplane(3, 2.0 + 1e-9, 40.0))
    assert near.blowup > 1e8


def test_dimensions() -> None:
    spec = ProblemSpec.partial_henon(3, 3.0, 10.0)
    assert spec.n == 4
    assert spec.dimension == 3
    assert spec.original_dimension == 6
    assert spec.symmetry is SymmetryClass.AXISYM
    assert spec.original_symmetry is SymmetryClass.DOUBLY_SYMMETRIC

    plane = ProblemSpec.create(ProblemCase.HYPERPLANE, 3, 3.0, 10.0)
    assert plane.n == 3
    assert plane.original_dimension == 3
    assert plane.symmetry is SymmetryClass.AXISYM_EVEN


def test_str() -> None:
    assert str(ProblemSpec.partial_henon(2, 3.0, 80.0)) == "partial_henon (m=2, p=3, alpha=80)"
    assert str(ProblemSpec.hyperplane(3, 3.0, 80.0)) == "hyperplane (N=3, p=3, alpha=80)"


def test_critical_exponent() -> None:
    assert critical_exponent(3) == 6.0
    assert critical_exponent(4) == 4.0


def test_limit_gamma() -> None:
    assert limit_gamma(ProblemCase.FULL_HENON) == 0.5
    assert limit_gamma(ProblemCase.PARTIAL_HENON) == 0.5
    assert limit_gamma(ProblemCase.HYPERPLANE) == 1.0


def test_gamma_scaling_exponent() -> None:
    # m_{1/2,p} = 2^{n-2-2n/p} m_{1,p}
    assert gamma_scaling_exponent(3, 3.0) == pytest.approx(1.0)
    assert 0.5 ** gamma_scaling_exponent(3, 3.0) == pytest.approx(2.0 ** (3 - 2 - 2))
