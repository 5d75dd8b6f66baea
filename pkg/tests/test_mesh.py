#!/usr/bin/python
"""Test for meridian grids, fields and the discrete operators."""


import pytest  # type: ignore

import math
import numpy as np
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from henonlab.exceptions import BadResolution, BoundaryMismatch, MeshError, OutputError
from henonlab.mesh import (
    BallPolar,
    BoundaryTag,
    Field,
    HalfSpaceBox,
    Pole,
    apply_laplacian,
    ball_measure,
    build_grid,
    dirichlet_energy,
    read_field_csv,
    sine_power_integral,
    weighted_lp_norm,
    write_field_csv,
)
from henonlab.reduction import WeightKind


# Grids:


@pytest.mark.parametrize(
    ("domain", "n", "resolutions", "grading"),
    [
        pytest.param(BallPolar(1.0), 3, (4, 16), 1.0, id="too few rho nodes"),
        pytest.param(BallPolar(1.0), 3, (16, 7), 1.0, id="too few sigma nodes"),
        pytest.param(BallPolar(1.0), 2, (16, 16), 1.0, id="n=2"),
        pytest.param(BallPolar(1.0), 3, (16, 16), 0.9, id="grading below 1"),
        pytest.param(BallPolar(1.0), 3, (16, 16), math.nan, id="nan grading"),
        pytest.param(BallPolar(0.0), 3, (16, 16), 1.0, id="zero radius"),
        pytest.param(HalfSpaceBox(0.0, 1.0), 3, (16, 16), 1.0, id="flat box"),
        pytest.param(HalfSpaceBox(4.0, 8.0), 3, (16, 16), 1.1, id="graded box"),
    ],
)
def test_build_grid_errors(domain, n, resolutions, grading) -> None:
    with pytest.raises(BadResolution):
        build_grid(domain, n, resolutions, grading)


def test_uniform_ball_grid() -> None:
    grid = build_grid(BallPolar(1.0), 3, (11, 9))
    assert grid.shape == (11, 9)
    assert grid.is_ball
    assert grid.axis_names == ("rho", "sigma")
    assert grid.radial_nodes[0] == 0.0 and grid.radial_nodes[-1] == 1.0
    assert grid.angular_nodes[0] == 0.0 and grid.angular_nodes[-1] == math.pi
    assert grid.radial_spacing == pytest.approx(np.full(10, 0.1))
    assert grid.angular_symmetric
    assert grid.node_count == 1 + 10 * 9
    assert str(grid) == "ball grid 11x9 (n=3)"


def test_graded_ball_grid() -> None:
    grid = build_grid(BallPolar(1.0), 3, (64, 32), 1.05, sigma_grading=1.1, pole=Pole.SOUTH)
    h = grid.radial_spacing
    assert h[1:] / h[:-1] == pytest.approx(np.full(len(h) - 1, 1.0 / 1.05))
    assert grid.radial_nodes[-1] == 1.0
    k = grid.angular_spacing
    assert k[1:] / k[:-1] == pytest.approx(np.full(len(k) - 1, 1.0 / 1.1))
    assert not grid.angular_symmetric


def test_both_poles_keep_mirror_symmetry() -> None:
    grid = build_grid(BallPolar(1.0), 3, (16, 33), sigma_grading=1.2, pole=Pole.BOTH)
    assert grid.angular_symmetric
    k = grid.angular_spacing
    assert k[0] < k[len(k) // 2]


def test_half_space_grid() -> None:
    grid = build_grid(HalfSpaceBox(6.0, 12.0), 3, (13, 25))
    assert not grid.is_ball
    assert grid.axis_names == ("s", "t")
    assert grid.radial_spacing == pytest.approx(np.full(12, 0.5))
    assert grid.angular_spacing == pytest.approx(np.full(24, 0.5))
    assert not grid.angular_symmetric
    assert str(grid) == "half-space grid 13x25 (n=3)"


def test_grid_equality() -> None:
    a = build_grid(BallPolar(1.0), 3, (16, 16))
    b = build_grid(BallPolar(1.0), 3, (16, 16))
    c = build_grid(BallPolar(1.0), 4, (16, 16))
    assert a == b and hash(a) == hash(b)
    assert a != c


def test_scaled_grid() -> None:
    grid = build_grid(BallPolar(1.0), 3, (16, 16), 1.02)
    half = grid.scaled(0.5)
    assert half.domain == BallPolar(0.5)
    assert half.radial_nodes == pytest.approx(0.5 * grid.radial_nodes)
    assert half.quadrature.total == pytest.approx(ball_measure(3, 0.5), rel=1e-13)


def test_dirichlet_mask(small_ball, small_box) -> None:
    mask = small_ball.dirichlet_mask()
    assert mask[-1].all() and not mask[:-1].any()
    box = small_box.dirichlet_mask()
    assert box[-1].all() and box[:, 0].all() and box[:, -1].all()
    assert not box[:-1, 1:-1].any()


def test_collapse_and_expand(small_ball) -> None:
    values = np.arange(float(np.prod(small_ball.shape))).reshape(small_ball.shape)
    x = small_ball.collapse(values)
    assert x[0] == pytest.approx(np.mean(values[0]))
    back = small_ball.expand(x)
    assert np.array_equal(back[1:], values[1:])
    assert np.all(back[0] == x[0])


# Quadrature:


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("grading", [1.0, 1.04])
def test_ball_measure(n, grading) -> None:
    grid = build_grid(BallPolar(1.0), n, (20, 12), grading)
    assert grid.quadrature.total == pytest.approx(ball_measure(n), rel=1e-13)


def test_sine_power_integral() -> None:
    assert sine_power_integral(0) == pytest.approx(math.pi)
    assert sine_power_integral(1) == pytest.approx(2.0)
    assert sine_power_integral(2) == pytest.approx(0.5 * math.pi)


def test_box_measure(small_box) -> None:
    # int_0^6 s ds * 12
    assert small_box.quadrature.total == pytest.approx(18.0 * 12.0, rel=1e-13)


@pytest.mark.parametrize(
    ("kind", "alpha", "expected"),
    [
        # 2 int_0^1 rho^6
        pytest.param(WeightKind.RADIAL_POWER, 4.0, 2.0 / 7.0, id="radial power"),
        # int_0^1 rho^3 * int_0^pi sin^4(sigma/2) sin(sigma)
        pytest.param(WeightKind.PARTIAL_REDUCED, 4.0, 1.0 / 6.0, id="partial"),
        # int_0^1 rho^4 * int_0^pi cos^2 sin
        pytest.param(WeightKind.HYPERPLANE_DIRECT, 2.0, 2.0 / 15.0, id="hyperplane"),
        # int_0^1 rho^3 * 2
        pytest.param(WeightKind.FULL_HENON_REDUCED, 4.0, 0.5, id="full"),
    ],
)
@pytest.mark.parametrize("grading", [1.0, 1.05])
def test_weighted_lp_norm_of_one_is_exact(kind, alpha, expected, grading) -> None:
    grid = build_grid(BallPolar(1.0), 3, (16, 12), grading, sigma_grading=1.1)
    one = Field.from_function(grid, lambda r, s: 1.0 + 0.0 * r)
    assert weighted_lp_norm(one, kind, alpha, 3.0) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("gamma", [0.0, 0.5, 1.0, 2.0])
def test_weighted_lp_norm_exponential(gamma) -> None:
    # (s_max^2 / 2) int_0^{t_max} e^{-gamma t}
    grid = build_grid(HalfSpaceBox(12.0, 24.0), 3, (48, 96))
    one = Field.from_function(grid, lambda s, t: 1.0 + 0.0 * s)
    value = weighted_lp_norm(one, WeightKind.EXPONENTIAL, 0.0, 3.0, gamma=gamma)
    if gamma == 0.0:
        expected = 72.0 * 24.0
    else:
        expected = 72.0 * (1.0 - math.exp(-24.0 * gamma)) / gamma
    assert value == pytest.approx(expected, rel=1e-4)


def test_weighted_lp_norm_integrates_the_field() -> None:
    # 2 int_0^1 rho^2 (1 - rho^2)^3 rho^2 = 2 * 16/1155
    grid = build_grid(BallPolar(1.0), 3, (129, 12))
    f = Field.from_function(grid, lambda r, s: 1.0 - r * r, boundary=BoundaryTag.DIRICHLET)
    value = weighted_lp_norm(f, WeightKind.RADIAL_POWER, 2.0, 3.0)
    assert value == pytest.approx(32.0 / 1155.0, rel=1e-3)


def test_cell_weight_is_the_nodal_weight_to_second_order() -> None:
    def error(resolutions) -> float:
        grid = build_grid(BallPolar(1.0), 3, resolutions)
        nodal = grid.weight(WeightKind.PARTIAL_REDUCED, 6.0)
        average = grid.cell_weight(WeightKind.PARTIAL_REDUCED, 6.0)
        rho, _ = grid.coordinates()
        keep = (rho >= 0.25) & ~grid.dirichlet_mask()
        return float(np.max(np.abs(average - nodal)[keep]))

    coarse = error((33, 17))
    fine = error((65, 33))
    assert fine < coarse / 3.0


# Operators:


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("grading", [1.0, 1.03])
def test_laplacian_of_squared_radius_is_exact(n, grading) -> None:
    grid = build_grid(BallPolar(1.0), n, (24, 16), grading, sigma_grading=1.05)
    f = Field.from_function(grid, lambda r, s: r * r)
    result = apply_laplacian(f).values
    inner = ~grid.dirichlet_mask()
    assert result[inner] == pytest.approx(np.full(inner.sum(), 2.0 * n), rel=1e-10)
    assert np.all(result[~inner] == 0.0)


def test_half_space_laplacian_of_quadratic_is_exact(small_box) -> None:
    f = Field.from_function(small_box, lambda s, t: s * s + t * t)
    result = apply_laplacian(f).values
    inner = ~small_box.dirichlet_mask()
    assert result[inner] == pytest.approx(np.full(inner.sum(), 6.0), rel=1e-10)


# (function, its Laplacian in R^n) of z = rho cos(sigma) and |z| = rho.
HARMONIC_Z = (lambda r, s: r * np.cos(s), lambda r, s, n: 0.0 * r)
Z_SQUARED = (lambda r, s: (r * np.cos(s)) ** 2, lambda r, s, n: 2.0 + 0.0 * r)
CUBIC = (lambda r, s: r**3 * np.cos(s), lambda r, s, n: (2.0 * n + 4.0) * r * np.cos(s))

REFINEMENTS = [(33, 17), (65, 33), (129, 65)]


def _laplacian_errors(n, pair, *, rho_min=0.0, integrated=False):
    """Errors of apply_laplacian on successively halved uniform grids.

    The max norm over the nodes with rho >= rho_min, or the quadrature
    weighted L1 norm over all unknowns, the origin included.
    """
    function, laplacian = pair
    errors = []
    for resolutions in REFINEMENTS:
        grid = build_grid(BallPolar(1.0), n, resolutions)
        rho, sigma = grid.coordinates()
        result = apply_laplacian(Field.from_function(grid, function)).values
        error = np.abs(result - laplacian(rho, sigma, n))
        keep = (rho >= rho_min) & ~grid.dirichlet_mask()
        if integrated:
            errors.append(float(np.sum((grid.quadrature.weights * error)[keep])))
        else:
            errors.append(float(np.max(error[keep])))
    return errors


def _orders(errors):
    return [math.log2(coarse / fine) for coarse, fine in zip(errors, errors[1:])]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_laplacian_of_first_harmonic_converges_everywhere(n) -> None:
    # The first ring next to the origin included.
    errors = _laplacian_errors(n, HARMONIC_Z)
    assert all(order > 0.8 for order in _orders(errors))


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize(
    "pair",
    [
        pytest.param(HARMONIC_Z, id="z"),
        pytest.param(Z_SQUARED, id="z^2"),
        pytest.param(CUBIC, id="|z|^2 z"),
    ],
)
def test_laplacian_second_order_in_mean(n, pair) -> None:
    errors = _laplacian_errors(n, pair, integrated=True)
    assert all(order > 1.6 for order in _orders(errors))


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize(
    "pair",
    [
        pytest.param(Z_SQUARED, id="z^2"),
        pytest.param(CUBIC, id="|z|^2 z"),
    ],
)
def test_laplacian_second_order_away_from_origin(n, pair) -> None:
    errors = _laplacian_errors(n, pair, rho_min=0.25)
    assert all(abs(order - 2.0) < 0.2 for order in _orders(errors))


def test_energy_second_order() -> None:
    # int |grad (1 - rho^2)|^2 over B_3 = 2 int_0^1 4 rho^4 = 8/5
    errors = []
    for resolutions in REFINEMENTS:
        grid = build_grid(BallPolar(1.0), 3, resolutions)
        f = Field.from_function(
            grid, lambda r, s: 1.0 - r * r, boundary=BoundaryTag.DIRICHLET
        )
        errors.append(abs(dirichlet_energy(f) - 1.6))
    assert all(abs(order - 2.0) < 0.2 for order in _orders(errors))


def test_laplacian_checks_boundary(small_ball) -> None:
    values = np.ones(small_ball.shape)
    f = Field(small_ball, values, boundary=BoundaryTag.FREE)
    assert apply_laplacian(f).boundary is BoundaryTag.FREE


def test_energy_of_paraboloid() -> None:
    # int |grad (1 - rho^2)|^2 = 2 int_0^1 4 rho^4 = 8/5
    grid = build_grid(BallPolar(1.0), 3, (128, 64))
    f = Field.from_function(grid, lambda r, s: 1.0 - r * r, boundary=BoundaryTag.DIRICHLET)
    assert dirichlet_energy(f) == pytest.approx(1.6, rel=2e-4)


def test_energy_is_zero_only_for_zero(small_ball) -> None:
    assert dirichlet_energy(Field.zeros(small_ball)) == 0.0
    values = np.zeros(small_ball.shape)
    values[5, 7] = 1.0
    assert dirichlet_energy(Field(small_ball, values)) > 0.0


@pytest.mark.parametrize("grading", [1.0, 1.05])
def test_summation_by_parts(grading) -> None:
    grid = build_grid(BallPolar(1.0), 4, (20, 14), grading)
    rng = np.random.default_rng(2)
    f = Field.from_unknowns(grid, rng.random(int(grid.operators.interior.sum())))
    laplacian = grid.collapse(apply_laplacian(f).values)
    x = grid.collapse(f.values)
    ops = grid.operators
    assert dirichlet_energy(f) == pytest.approx(-float(np.sum(ops.mass * laplacian * x)))


# Fields:


def test_field_checks(small_ball) -> None:
    with pytest.raises(BoundaryMismatch):
        Field(small_ball, np.zeros((3, 3)))
    with pytest.raises(BoundaryMismatch):
        Field(small_ball, np.ones(small_ball.shape))
    ring = np.zeros(small_ball.shape)
    ring[0, 3] = 1.0
    with pytest.raises(BoundaryMismatch):
        Field(small_ball, ring)
    bad = np.zeros(small_ball.shape)
    bad[2, 2] = math.nan
    with pytest.raises(MeshError):
        Field(small_ball, bad, boundary=BoundaryTag.FREE)


def test_field_is_read_only(small_ball) -> None:
    f = Field.zeros(small_ball)
    with pytest.raises(ValueError):
        f.values[1, 1] = 2.0


def test_unknowns_roundtrip(small_ball) -> None:
    rng = np.random.default_rng(4)
    unknowns = rng.random(int(small_ball.operators.interior.sum()))
    f = Field.from_unknowns(small_ball, unknowns)
    assert f.unknowns() == pytest.approx(unknowns, rel=1e-15)


def test_argmax_ties(small_ball, small_box) -> None:
    values = np.zeros(small_ball.shape)
    values[3, 5] = values[3, 2] = values[6, 1] = 1.0
    assert Field(small_ball, values).argmax() == (3, 2)

    box = np.zeros(small_box.shape)
    box[4, 6] = box[2, 9] = box[7, 6] = 1.0
    f = Field(small_box, box)
    assert f.argmax() == (4, 6)
    assert f.max_location == small_box.point(4, 6)
    assert f.max_value == 1.0


def test_weight_on_wrong_grid(small_ball, small_box) -> None:
    with pytest.raises(MeshError):
        small_ball.weight(WeightKind.EXPONENTIAL, 0.0)
    with pytest.raises(MeshError):
        small_box.weight(WeightKind.RADIAL_POWER, 2.0)


# Snapshots:


def test_field_csv(tmpdir, small_ball) -> None:
    rng = np.random.default_rng(9)
    f = Field.from_unknowns(small_ball, rng.random(int(small_ball.operators.interior.sum())))
    path = os.path.join(str(tmpdir), "field.csv")
    write_field_csv(f, path, provenance="henonlab test")

    with open(path) as source:
        lines = source.read().splitlines()
    assert lines[0] == "# henonlab test"
    assert lines[1] == "rho,sigma,value"
    assert len(lines) == 2 + 24 * 16

    back = read_field_csv(path, small_ball)
    assert np.array_equal(back.values, f.values)


def test_field_csv_wrong_grid(tmpdir, small_ball, small_box) -> None:
    path = os.path.join(str(tmpdir), "field.csv")
    write_field_csv(Field.zeros(small_ball), path)
    with pytest.raises(OutputError):
        read_field_csv(path, small_box)
    with pytest.raises(MeshError):
        read_field_csv(path, build_grid(BallPolar(1.0), 3, (24, 17)))


def test_field_csv_missing(tmpdir, small_ball) -> None:
    with pytest.raises(OutputError):
        read_field_csv(os.path.join(str(tmpdir), "nothing.csv"), small_ball)
