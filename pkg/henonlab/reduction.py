# -*- coding: utf-8 -*-
"""Change of variables between doubly symmetric and axially symmetric functions.

A doubly symmetric u on B_{2m}(0,1) only depends on r1 = |y_1| and
r2 = |y_2|. Writing r1 = r cos(theta), r2 = r sin(theta) and
rho = r^2 / 2, sigma = 2 theta turns it into an axially symmetric v on
B_{m+1}(0,1/2) with |z| = rho and z_{m+1} = rho cos(sigma). Away from the
origin the Laplacians are related by

    Delta_{2m} u = 2 |z| Delta_{m+1} v.

All functions in here accept scalars or numpy arrays.
"""


from __future__ import annotations

from .exceptions import DomainError, SingularSample

from enum import Enum, unique
import math
import numpy as np
import typing


Scalar = typing.Union[float, np.ndarray]

# |sin(2 theta)| below which a point counts as lying on a block axis.
AXIS_TOLERANCE = 1e-8


class ReducedPoint(typing.NamedTuple):
    """Meridian point of the reduced ball: |z| = rho, z_{m+1} = rho cos(sigma)."""

    rho: Scalar
    sigma: Scalar


class OriginalPoint(typing.NamedTuple):
    """Meridian point of B_{2m}: r1 = |y_1|, r2 = |y_2|."""

    r1: Scalar
    r2: Scalar


class CylindricalPoint(typing.NamedTuple):
    """Point of the half-space meridian: s = |z'|, t = z_{last}."""

    s: Scalar
    t: Scalar


@unique
class WeightKind(Enum):
    """Weights h of -Delta w = h |w|^{p-2} w, in the coordinates they are used in."""

    FULL_HENON_REDUCED = "full_henon_reduced"  # |z|^{(alpha-2)/2} on B(0,1)
    PARTIAL_REDUCED = "partial_reduced"  # ((|z|-z_{m+1})/2)^{alpha/2}/|z| on B(0,1)
    HYPERPLANE_DIRECT = "hyperplane_direct"  # |z_N|^alpha on B(0,1)
    RADIAL_POWER = "radial_power"  # |z|^alpha on B(0,1)
    FULL_HENON_HALF_BALL = "full_henon_half_ball"  # (2|z|)^{(alpha-2)/2} on B(0,1/2)
    PARTIAL_HALF_BALL = "partial_half_ball"  # (|z|-z_{m+1})^{alpha/2}/(2|z|) on B(0,1/2)
    EXPONENTIAL = "exponential"  # e^{-gamma t} on the half-space

    @property
    def on_half_space(self) -> bool:
        return self is WeightKind.EXPONENTIAL

    @property
    def needs_alpha_above_two(self) -> bool:
        return self in (
            WeightKind.FULL_HENON_REDUCED,
            WeightKind.PARTIAL_REDUCED,
            WeightKind.FULL_HENON_HALF_BALL,
            WeightKind.PARTIAL_HALF_BALL,
        )


def _as_result(value: np.ndarray) -> Scalar:
    return float(value) if np.ndim(value) == 0 else value


def map_reduced_to_original(
    z: ReducedPoint, ball_radius: float = 0.5, *, closed: bool = False
) -> OriginalPoint:
    """(rho, sigma) on B_{m+1}(0, 1/2) -> (|y_1|, |y_2|) on B_{2m}(0, 1).

    r1 = sqrt(|z| + z_{m+1}) and r2 = sqrt(|z| - z_{m+1}), evaluated as
    sqrt(2 rho) cos(sigma/2) and sqrt(2 rho) sin(sigma/2) so that nothing
    cancels near the axis. `closed` admits the sphere rho = ball_radius.
    """
    rho = np.asarray(z.rho, dtype=float)
    sigma = np.asarray(z.sigma, dtype=float)
    outside = rho > ball_radius if closed else rho >= ball_radius
    if np.any(rho < 0.0) or np.any(outside):
        raise DomainError(f"Reduced radius outside [0, {ball_radius}).")
    if np.any(sigma < 0.0) or np.any(sigma > math.pi):
        raise DomainError("Polar angle outside [0, pi].")

    r = np.sqrt(2.0 * rho)
    return OriginalPoint(
        _as_result(r * np.cos(0.5 * sigma)), _as_result(r * np.sin(0.5 * sigma))
    )


def map_original_to_reduced(y: OriginalPoint) -> ReducedPoint:
    """(|y_1|, |y_2|) on B_{2m}(0, 1) -> (rho, sigma) on B_{m+1}(0, 1/2)."""
    r1 = np.asarray(y.r1, dtype=float)
    r2 = np.asarray(y.r2, dtype=float)
    if np.any(r1 < 0.0) or np.any(r2 < 0.0):
        raise DomainError("Block moduli must be nonnegative.")
    if np.any(r1 * r1 + r2 * r2 >= 1.0):
        raise DomainError("Point outside the open unit ball of R^{2m}.")

    return ReducedPoint(
        _as_result(0.5 * (r1 * r1 + r2 * r2)), _as_result(2.0 * np.arctan2(r2, r1))
    )


def reduced_max_to_original(
    max_rho: float, max_sigma: float, max_value: float, p: float
) -> typing.Tuple[OriginalPoint, float, float]:
    """Move a maximizer of the unit-ball profile w to the original ball.

    w lives on B_{m+1}(0,1), v(z) = 4^{1/(p-2)} w(2z) on B_{m+1}(0,1/2) and
    u(y) = v(z) on B_{2m}(0,1). Returns the original point, its radius
    r_alpha = sqrt(2 rho_half) (the relation rho = r^2/2) and the maximum
    M_alpha of u.
    """
    rho_half = 0.5 * max_rho
    point = map_reduced_to_original(
        ReducedPoint(rho_half, max_sigma), 0.5, closed=True
    )
    r_alpha = math.sqrt(2.0 * rho_half)
    return point, r_alpha, 4.0 ** (1.0 / (p - 2.0)) * max_value


def eval_weight(
    kind: WeightKind,
    z: typing.Union[ReducedPoint, CylindricalPoint],
    alpha: float,
    *,
    gamma: float = 1.0,
) -> Scalar:
    """Evaluate a weight; zero at the origin for the singular-looking ones."""
    if kind is WeightKind.EXPONENTIAL:
        assert isinstance(z, CylindricalPoint)
        t = np.asarray(z.t, dtype=float)
        return _as_result(np.exp(-gamma * t))

    assert isinstance(z, ReducedPoint)
    rho = np.asarray(z.rho, dtype=float)
    sigma = np.asarray(z.sigma, dtype=float)
    if kind.needs_alpha_above_two:
        assert alpha > 2.0

    with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
        if kind is WeightKind.FULL_HENON_REDUCED:
            value = rho ** (0.5 * (alpha - 2.0))
        elif kind is WeightKind.PARTIAL_REDUCED:
            # ((rho - rho cos sigma) / 2)^{alpha/2} / rho
            value = rho ** (0.5 * alpha - 1.0) * np.sin(0.5 * sigma) ** alpha
        elif kind is WeightKind.HYPERPLANE_DIRECT:
            value = np.abs(rho * np.cos(sigma)) ** alpha
        elif kind is WeightKind.RADIAL_POWER:
            value = rho**alpha
        elif kind is WeightKind.FULL_HENON_HALF_BALL:
            value = (2.0 * rho) ** (0.5 * (alpha - 2.0))
        elif kind is WeightKind.PARTIAL_HALF_BALL:
            # (rho - rho cos sigma)^{alpha/2} / (2 rho)
            value = (
                2.0 ** (0.5 * alpha - 1.0)
                * rho ** (0.5 * alpha - 1.0)
                * np.sin(0.5 * sigma) ** alpha
            )
        else:
            assert False, f"Unhandled weight {kind}"

    value = np.where(rho > 0.0, value, 0.0)
    return _as_result(value)


# Laplacian correspondence:


class AnalyticTestFunction(typing.NamedTuple):
    """Axially symmetric v(rho, sigma) with hand derived derivatives."""

    name: str
    value: typing.Callable[[Scalar, Scalar], Scalar]
    d_rho: typing.Callable[[Scalar, Scalar], Scalar]
    d_rho_rho: typing.Callable[[Scalar, Scalar], Scalar]
    d_sigma: typing.Callable[[Scalar, Scalar], Scalar]
    d_sigma_sigma: typing.Callable[[Scalar, Scalar], Scalar]
    # Delta_n v as a function of (rho, sigma, n):
    laplacian: typing.Callable[[Scalar, Scalar, int], Scalar]


def _zeros(rho: Scalar, sigma: Scalar) -> Scalar:
    return np.zeros(np.broadcast(rho, sigma).shape)


SQUARED_RADIUS = AnalyticTestFunction(
    name="squared_radius",
    value=lambda r, s: r * r + 0.0 * s,
    d_rho=lambda r, s: 2.0 * r + 0.0 * s,
    d_rho_rho=lambda r, s: 2.0 + 0.0 * (r + s),
    d_sigma=_zeros,
    d_sigma_sigma=_zeros,
    laplacian=lambda r, s, n: 2.0 * n + 0.0 * (r + s),
)

CONSTANT = AnalyticTestFunction(
    name="constant",
    value=lambda r, s: 1.0 + 0.0 * (r + s),
    d_rho=_zeros,
    d_rho_rho=_zeros,
    d_sigma=_zeros,
    d_sigma_sigma=_zeros,
    laplacian=lambda r, s, n: 0.0 * (r + s),
)

AXIAL = AnalyticTestFunction(
    name="axial",
    value=lambda r, s: r * np.cos(s),
    d_rho=lambda r, s: np.cos(s) + 0.0 * r,
    d_rho_rho=_zeros,
    d_sigma=lambda r, s: -r * np.sin(s),
    d_sigma_sigma=lambda r, s: -r * np.cos(s),
    laplacian=lambda r, s, n: 0.0 * (r + s),
)

EXPONENTIAL_AXIAL = AnalyticTestFunction(
    name="exponential_axial",
    value=lambda r, s: np.exp(r * np.cos(s)),
    d_rho=lambda r, s: np.cos(s) * np.exp(r * np.cos(s)),
    d_rho_rho=lambda r, s: np.cos(s) ** 2 * np.exp(r * np.cos(s)),
    d_sigma=lambda r, s: -r * np.sin(s) * np.exp(r * np.cos(s)),
    d_sigma_sigma=lambda r, s: (r * r * np.sin(s) ** 2 - r * np.cos(s))
    * np.exp(r * np.cos(s)),
    laplacian=lambda r, s, n: np.exp(r * np.cos(s)) + 0.0 * n,
)

ANALYTIC_SUITE: typing.Tuple[AnalyticTestFunction, ...] = (
    SQUARED_RADIUS,
    CONSTANT,
    AXIAL,
    EXPONENTIAL_AXIAL,
)


def _doubly_symmetric_laplacian(
    m: int,
    r: np.ndarray,
    theta: np.ndarray,
    u_r: np.ndarray,
    u_rr: np.ndarray,
    u_t: np.ndarray,
    u_tt: np.ndarray,
) -> np.ndarray:
    """Delta_{2m} u of a doubly symmetric u written in (r, theta).

    (cot - tan)(theta) u_t = 2 cot(2 theta) u_t tends to u_tt on the axes
    theta in {0, pi/2}, where u_t vanishes; the limit is used there.
    """
    sin_2t = np.sin(2.0 * theta)
    on_axis = np.abs(sin_2t) < AXIS_TOLERANCE
    with np.errstate(divide="ignore", invalid="ignore"):
        first = np.where(on_axis, u_tt, 2.0 * np.cos(2.0 * theta) / sin_2t * u_t)
    return u_rr + (2 * m - 1) / r * u_r + ((m - 1) * first + u_tt) / (r * r)


def _check_samples(samples: ReducedPoint, floor: float) -> typing.Tuple[np.ndarray, np.ndarray]:
    rho = np.atleast_1d(np.asarray(samples.rho, dtype=float))
    sigma = np.atleast_1d(np.asarray(samples.sigma, dtype=float))
    if np.any(rho < floor):
        raise SingularSample(f"Sample closer than {floor:g} to the origin.")
    if np.any(sigma < 0.0) or np.any(sigma > math.pi):
        raise DomainError("Sample polar angles must lie in [0, pi].")
    if np.any(rho >= 0.5):
        raise DomainError("Samples must lie inside B(0, 1/2).")
    return rho, sigma


def laplacian_correspondence_residual(
    v_test: AnalyticTestFunction,
    m: int,
    samples: ReducedPoint,
    *,
    floor: float = 1e-3,
    step: typing.Optional[float] = None,
) -> float:
    """Max relative discrepancy of Delta_{2m} u = 2|z| Delta_{m+1} v.

    The transported u(r, theta) = v(r^2/2, 2 theta) is differentiated with
    the chain rule (`step` None) or with central differences of step `step`
    in r and theta. The right hand side always uses the analytic Laplacian.
    Errors are relative to max(|rhs|, 1) so harmonic tests measure absolute
    error.
    """
    rho, sigma = _check_samples(samples, floor)
    r = np.sqrt(2.0 * rho)
    theta = 0.5 * sigma

    if step is None:
        v_rho = v_test.d_rho(rho, sigma)
        u_r = r * v_rho
        u_rr = v_rho + r * r * v_test.d_rho_rho(rho, sigma)
        u_t = 2.0 * v_test.d_sigma(rho, sigma)
        u_tt = 4.0 * v_test.d_sigma_sigma(rho, sigma)
    else:
        h = step

        def u(rr: np.ndarray, tt: np.ndarray) -> np.ndarray:
            return np.asarray(v_test.value(0.5 * rr * rr, 2.0 * tt), dtype=float)

        center = u(r, theta)
        u_r = (u(r + h, theta) - u(r - h, theta)) / (2.0 * h)
        u_rr = (u(r + h, theta) - 2.0 * center + u(r - h, theta)) / (h * h)
        u_t = (u(r, theta + h) - u(r, theta - h)) / (2.0 * h)
        u_tt = (u(r, theta + h) - 2.0 * center + u(r, theta - h)) / (h * h)

    lhs = _doubly_symmetric_laplacian(m, r, theta, u_r, u_rr, u_t, u_tt)
    rhs = 2.0 * rho * np.asarray(v_test.laplacian(rho, sigma, m + 1), dtype=float)
    scale = np.maximum(np.abs(rhs), 1.0)
    return float(np.max(np.abs(lhs - rhs) / scale))


class ConvergenceStudy(typing.NamedTuple):
    """Errors of a refinement study and the fitted log-log slope."""

    name: str
    steps: typing.Tuple[float, ...]
    errors: typing.Tuple[float, ...]
    slope: float


def correspondence_convergence(
    v_test: AnalyticTestFunction,
    m: int,
    samples: ReducedPoint,
    steps: typing.Sequence[float],
    *,
    floor: float = 1e-3,
) -> ConvergenceStudy:
    """Central difference residuals over `steps` and the observed order."""
    assert len(steps) >= 2
    errors = tuple(
        laplacian_correspondence_residual(v_test, m, samples, floor=floor, step=h)
        for h in steps
    )
    positive = [(h, e) for h, e in zip(steps, errors) if e > 0.0]
    if len(positive) >= 2:
        slope = float(
            np.polyfit(
                np.log([h for h, _ in positive]), np.log([e for _, e in positive]), 1
            )[0]
        )
    else:
        slope = float("nan")
    return ConvergenceStudy(v_test.name, tuple(steps), errors, slope)


def sample_points(
    count: int, *, seed: int = 0, floor: float = 0.05, radius: float = 0.5
) -> ReducedPoint:
    """Random reduced points kept `floor` away from the origin and the axis."""
    rng = np.random.default_rng(seed)
    rho = rng.uniform(floor, radius - floor, count)
    sigma = rng.uniform(floor, math.pi - floor, count)
    return ReducedPoint(rho, sigma)
