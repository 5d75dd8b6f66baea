# -*- coding: utf-8 -*-
"""Alpha sweeps and the scaling laws measured on them.

A sweep solves one problem for increasing alpha and records, per alpha,
the quotient, the energy, the maximum M_alpha and its distance to the
boundary in original coordinates. From the records:

  * `fit_blowup` (and the quotient and energy fits) estimate exponents by
    ordinary least squares in log-log coordinates;
  * `gap_law` measures alpha (1 - r_alpha) and how much it still moves;
  * `compare_limit` divides quotients by alpha^beta and compares them with
    the half-space limit constant of the case;
  * `profile_comparison` blows the largest-alpha solution up at its
    concentration pole and measures its gradient distance to the limit
    minimizer.
"""


from __future__ import annotations

from .exceptions import (
    AnalysisError,
    DimensionMismatch,
    HenonLabError,
    InsufficientData,
    InterpolationOutOfRange,
    NotConverged,
    OutputError,
    ValidationError,
)
from .helper.csvio import read_table, write_columns, write_table
from .location import Location
from .mesh import BoundaryTag, Field, MeridianGrid, dirichlet_energy
from .model import ProblemCase, ProblemSpec, ensure_valid, exponents, limit_gamma
from .printer import Printer, fail, h2, info, success, warn
from .reduction import (
    OriginalPoint,
    map_original_to_reduced,
    reduced_max_to_original,
)
from .solver import LimitConstant, SolveReport, SolverSettings, solve, solve_unrestricted

from concurrent.futures import ThreadPoolExecutor
import math
import numpy as np
import os
from scipy.interpolate import RegularGridInterpolator
import typing


SWEEP_HEADER = (
    "alpha",
    "quotient",
    "energy",
    "max_value",
    "max_rho",
    "r_alpha",
    "alpha_gap",
    "iterations",
    "residual",
    "converged",
)

FIT_HEADER = ("quantity", "slope", "intercept", "r_squared", "target", "rel_dev")


class SweepRecord(typing.NamedTuple):
    """Diagnostics of one alpha of a sweep.

    max_value is the maximum in original space and max_rho the reduced
    radius of the maximizer on the unit-ball grid. r_alpha is the original
    distance of the maximizer to the origin: sqrt(2 rho) with rho = max_rho/2
    the radius on B(0, 1/2) for the reduced cases, |z_N| for Hyperplane.
    """

    alpha: float
    quotient: float
    energy: float
    max_value: float
    max_rho: float
    r_alpha: float
    alpha_gap: float
    iterations: int
    residual: float
    converged: bool
    report: typing.Optional[SolveReport] = None

    def row(self) -> typing.Tuple[typing.Union[float, int, bool], ...]:
        return tuple(getattr(self, name) for name in SWEEP_HEADER)


class ScalingFit(typing.NamedTuple):
    """Least squares line through (log alpha, log quantity)."""

    quantity: str
    slope: float
    intercept: float
    r_squared: float
    alpha_min: float
    alpha_max: float
    target: float
    local_slopes: typing.Tuple[float, ...] = ()

    @property
    def relative_deviation(self) -> float:
        return abs(self.slope - self.target) / abs(self.target)

    def row(self) -> typing.Tuple[typing.Union[str, float], ...]:
        return (
            self.quantity,
            self.slope,
            self.intercept,
            self.r_squared,
            self.target,
            self.relative_deviation,
        )


class GapLaw(typing.NamedTuple):
    """alpha (1 - r_alpha) along a sweep."""

    alphas: typing.Tuple[float, ...]
    gaps: typing.Tuple[float, ...]
    spread: float  # relative spread over the upper half (at least two) of the alphas
    ell: float  # last gap, the estimate of the limit
    monotone: bool  # r_alpha nondecreasing in alpha


class LimitComparison(typing.NamedTuple):
    """Normalized quotients against their half-space target."""

    case: ProblemCase
    unrestricted: bool
    alphas: typing.Tuple[float, ...]
    normalized: typing.Tuple[float, ...]
    target: float
    target_gamma: float
    factor: float  # 2^{1-2/p} for K', 1 otherwise
    converted_from: typing.Optional[float]  # gamma of the solved limit, if different

    @property
    def relative_gap(self) -> float:
        return abs(self.normalized[-1] - self.target) / self.target


class ProfileComparison(typing.NamedTuple):
    """Blown-up profile of the largest alpha against the limit minimizer."""

    alpha: float
    gap: float  # E(w_hat - w_lim) / E(w_lim)
    limit_height: float  # t of the limit maximizer
    blown_up_height: float  # alpha (1 - max_rho) in reduced coordinates


# Records:


def transport_to_original(
    w: Field, p: float, points: OriginalPoint
) -> np.ndarray:
    """u(y) = v(z) = 4^{1/(p-2)} w(2z) at original meridian points (|y1|, |y2|)."""
    z = map_original_to_reduced(points)
    interpolate = _interpolator(w)
    rho = 2.0 * np.atleast_1d(np.asarray(z.rho, dtype=float))
    sigma = np.atleast_1d(np.asarray(z.sigma, dtype=float))
    return 4.0 ** (1.0 / (p - 2.0)) * interpolate(np.column_stack((rho, sigma)))


def original_maximum(
    report: SolveReport, spec: ProblemSpec
) -> typing.Tuple[float, float, float]:
    """(max_rho, r_alpha, M_alpha) of a solution in original coordinates.

    For the reduced cases M_alpha is the transported solution u evaluated at
    the original image of the maximizer.
    """
    rho, sigma = report.max_location
    if spec.case.is_reduced:
        point, r_alpha, _ = reduced_max_to_original(rho, sigma, report.max_value, spec.p)
        m_alpha = float(transport_to_original(report.solution, spec.p, point)[0])
        return rho, r_alpha, m_alpha
    return rho, abs(rho * math.cos(sigma)), report.max_value


def record_from_report(spec: ProblemSpec, report: SolveReport) -> SweepRecord:
    max_rho, r_alpha, m_alpha = original_maximum(report, spec)
    return SweepRecord(
        alpha=float(spec.alpha),
        quotient=report.quotient,
        energy=report.energy,
        max_value=m_alpha,
        max_rho=max_rho,
        r_alpha=r_alpha,
        alpha_gap=spec.alpha * (1.0 - r_alpha),
        iterations=report.iterations,
        residual=report.residual,
        converged=report.converged,
        report=report,
    )


def _check_alphas(alphas: typing.Sequence[float]) -> None:
    for a in alphas:
        if not (isinstance(a, (int, float)) and math.isfinite(a) and a > 2.0):
            raise ValidationError(f"Sweep alpha {a} must be a finite number > 2.")
    for a, b in zip(alphas, alphas[1:]):
        if not b > a:
            raise ValidationError(
                f"Sweep alphas must be strictly increasing ({a:g} then {b:g})."
            )


def run_sweep(
    template: ProblemSpec,
    alphas: typing.Sequence[float],
    grid: MeridianGrid,
    *,
    settings: SolverSettings = SolverSettings(),
    unrestricted: bool = False,
    threads: int = 1,
) -> typing.List[SweepRecord]:
    """One record per alpha, in the order of `alphas`.

    A NotConverged entry yields a record with converged=False; any other
    failure of an entry is reported and the entry skipped. Neither stops
    the sweep.
    """
    _check_alphas(alphas)
    specs = [template.with_alpha(float(a)) for a in alphas]
    for spec in specs:
        ensure_valid(spec)
    if not specs:
        return []

    h2(f"Sweep of {template.case.value} over {len(specs)} alphas on {grid}")
    solver = solve_unrestricted if unrestricted else solve

    def _run(spec: ProblemSpec) -> typing.Union[SweepRecord, Exception]:
        try:
            return record_from_report(spec, solver(spec, grid, settings=settings))
        except NotConverged as e:
            if e.report is None:
                return e
            return record_from_report(spec, e.report)
        except (HenonLabError, ArithmeticError, AssertionError) as e:
            return e

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(_run, specs))
    else:
        outcomes = [_run(spec) for spec in specs]

    records: typing.List[SweepRecord] = []
    failed = 0
    for spec, outcome in zip(specs, outcomes):
        if isinstance(outcome, SweepRecord):
            records.append(outcome)
            if outcome.converged:
                success(
                    f"alpha={spec.alpha:g}: quotient {outcome.quotient:.8g}, "
                    f"M={outcome.max_value:.6g}, r={outcome.r_alpha:.6f}",
                    verbosity=1,
                )
            else:
                failed += 1
                fail(
                    f"alpha={spec.alpha:g} did not converge "
                    f"(residual {outcome.residual:.3g})."
                )
        else:
            failed += 1
            fail(f"alpha={spec.alpha:g} failed: {outcome}")
            Printer.instance().flush()

    if failed:
        warn(f"{failed} of {len(specs)} sweep entries failed.")
    _check_monotone([r for r in records if r.converged])
    return records


def _check_monotone(records: typing.Sequence[SweepRecord]) -> bool:
    monotone = all(b.r_alpha >= a.r_alpha for a, b in zip(records, records[1:]))
    if not monotone:
        warn("r_alpha is not monotone in alpha along the sweep.")
    return monotone


# Fits:


def local_slopes(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Point to point d log y / d log x."""
    return np.diff(np.log(y)) / np.diff(np.log(x))


def fit_power_law(
    alphas: typing.Sequence[float],
    values: typing.Sequence[float],
    *,
    quantity: str,
    target: float,
) -> ScalingFit:
    """Ordinary least squares of log(value) = intercept + slope log(alpha)."""
    x = np.asarray(alphas, dtype=float)
    y = np.asarray(values, dtype=float)
    if len(x) < 3:
        raise InsufficientData(f"Fit of {quantity} needs 3 points, got {len(x)}.")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise AnalysisError(f"Fit of {quantity} needs positive data.")

    log_x, log_y = np.log(x), np.log(y)
    slope, intercept = np.polyfit(log_x, log_y, 1)
    predicted = intercept + slope * log_x
    total = float(np.sum((log_y - log_y.mean()) ** 2))
    remaining = float(np.sum((log_y - predicted) ** 2))
    r_squared = 1.0 if total == 0.0 else min(1.0, max(0.0, 1.0 - remaining / total))
    return ScalingFit(
        quantity,
        float(slope),
        float(intercept),
        r_squared,
        float(x.min()),
        float(x.max()),
        target,
        tuple(float(s) for s in local_slopes(x, y)),
    )


def _converged(records: typing.Sequence[SweepRecord]) -> typing.List[SweepRecord]:
    return [r for r in records if r.converged]


def fit_blowup(records: typing.Sequence[SweepRecord], p: float) -> ScalingFit:
    """M_alpha ~ alpha^{2/(p-2)}."""
    good = _converged(records)
    return fit_power_law(
        [r.alpha for r in good],
        [r.max_value for r in good],
        quantity="blowup",
        target=2.0 / (p - 2.0),
    )


def fit_quotient(records: typing.Sequence[SweepRecord], spec: ProblemSpec) -> ScalingFit:
    """Quotient ~ alpha^beta."""
    good = _converged(records)
    return fit_power_law(
        [r.alpha for r in good],
        [r.quotient for r in good],
        quantity="quotient",
        target=exponents(spec).quotient_beta,
    )


def fit_energy(records: typing.Sequence[SweepRecord], spec: ProblemSpec) -> ScalingFit:
    """Energy ~ alpha^{beta p/(p-2)}."""
    good = _converged(records)
    return fit_power_law(
        [r.alpha for r in good],
        [r.energy for r in good],
        quantity="energy",
        target=exponents(spec).energy_gamma,
    )


def gap_law(records: typing.Sequence[SweepRecord]) -> GapLaw:
    good = _converged(records)
    if len(good) < 2:
        raise InsufficientData(f"Gap law needs 2 converged records, got {len(good)}.")
    gaps = [r.alpha * (1.0 - r.r_alpha) for r in good]
    # Upper half of the alphas, never fewer than two gaps.
    upper = gaps[-max(2, (len(gaps) + 1) // 2) :]
    spread = (max(upper) - min(upper)) / abs(upper[-1]) if upper[-1] else math.inf
    return GapLaw(
        tuple(r.alpha for r in good),
        tuple(gaps),
        spread,
        gaps[-1],
        _check_monotone(good),
    )


# Limit constants:


def limit_target(
    case: ProblemCase, limit: LimitConstant, *, unrestricted: bool = False
) -> typing.Tuple[float, float, float]:
    """(target, gamma, factor) the normalized quotients of a case approach.

    Both reduced cases go to m_{1/2,p}; Hyperplane goes to 2^{1-2/p} m_{1,p}
    for K' (two concentration points) and to m_{1,p} for K.
    """
    gamma = limit_gamma(case)
    factor = 1.0
    if case is ProblemCase.HYPERPLANE and not unrestricted:
        factor = 2.0 ** (1.0 - 2.0 / limit.p)
    return factor * limit.value_at(gamma), gamma, factor


def compare_limit(
    records: typing.Sequence[SweepRecord],
    limit: LimitConstant,
    spec: ProblemSpec,
    *,
    unrestricted: bool = False,
) -> LimitComparison:
    """quotient / alpha^beta per alpha against the limit target."""
    if limit.n != spec.n:
        raise DimensionMismatch(
            f"Limit constant solved in dimension {limit.n}, problem has {spec.n}."
        )
    if limit.p != spec.p:
        raise DimensionMismatch(f"Limit constant has p={limit.p}, problem p={spec.p}.")
    good = _converged(records)
    if not good:
        raise InsufficientData("No converged record to compare.")

    beta = exponents(spec).quotient_beta
    target, gamma, factor = limit_target(spec.case, limit, unrestricted=unrestricted)
    converted = None if gamma == limit.gamma else limit.gamma
    if converted is not None:
        info(
            f"Limit constant converted from gamma={limit.gamma:g} to "
            f"gamma={gamma:g} by the scaling identity."
        )
    return LimitComparison(
        spec.case,
        unrestricted,
        tuple(r.alpha for r in good),
        tuple(r.quotient / r.alpha**beta for r in good),
        target,
        gamma,
        factor,
        converted,
    )


# Profiles:


def _interpolator(w: Field) -> RegularGridInterpolator:
    grid = w.grid
    return RegularGridInterpolator(
        (grid.radial_nodes, grid.angular_nodes),
        w.values,
        bounds_error=False,
        fill_value=0.0,
    )


def blow_up(
    w: Field, case: ProblemCase, alpha: float, p: float, target: MeridianGrid
) -> Field:
    """w_hat(s, t) = alpha^{-2/(p-2)} w(z) on a half-space grid.

    z = zeta/alpha - e for PartialHenon (south pole), z = e - zeta/alpha for
    the other cases (north pole). Outside the ball w_hat is 0.
    """
    assert w.grid.is_ball and not target.is_ball
    s, t = target.coordinates()
    radius = float(w.grid.radial_nodes[-1])
    if float(target.radial_nodes[-1]) / alpha >= radius or (
        float(target.angular_nodes[-1]) / alpha >= 2.0 * radius
    ):
        raise InterpolationOutOfRange(
            f"Box of {target} is too large for alpha={alpha:g}."
        )

    radial = s / alpha
    axial = t / alpha - radius
    if case is not ProblemCase.PARTIAL_HENON:
        axial = -axial
    rho = np.hypot(radial, axial)
    sigma = np.arctan2(radial, axial)
    values = _interpolator(w)(np.column_stack((rho.ravel(), sigma.ravel())))
    values = np.where(rho.ravel() < radius, values, 0.0).reshape(target.shape)
    return Field(target, alpha ** (-2.0 / (p - 2.0)) * values, boundary=BoundaryTag.FREE)


def limit_solution(limit: LimitConstant, gamma: float) -> Field:
    """Solution of -Delta W = e^{-gamma t} W^{p-1} from the solved limit.

    W_gamma(x) = (gamma/gamma0)^{2/(p-2)} W_gamma0(gamma x/gamma0).
    """
    field = limit.report.solution
    if gamma == limit.gamma:
        return field
    ratio = gamma / limit.gamma
    grid = field.grid
    s, t = grid.coordinates()
    interpolate = _interpolator(field)
    values = interpolate(np.column_stack(((ratio * s).ravel(), (ratio * t).ravel())))
    values = ratio ** (2.0 / (limit.p - 2.0)) * values.reshape(grid.shape)
    values[grid.dirichlet_mask()] = 0.0
    return Field(grid, values)


def gradient_gap(a: Field, b: Field) -> float:
    """E(a - b) / E(b) on the grid of b."""
    if a.grid != b.grid:
        raise DimensionMismatch("Fields live on different grids.")
    reference = dirichlet_energy(b)
    if reference == 0.0:
        raise AnalysisError("Reference field has no energy.")
    difference = Field(b.grid, a.values - b.values, boundary=BoundaryTag.FREE)
    return dirichlet_energy(difference) / reference


def profile_comparison(
    record: SweepRecord, spec: ProblemSpec, limit: LimitConstant
) -> ProfileComparison:
    """Blow the solution of `record` up and compare it with the limit minimizer."""
    if record.report is None:
        raise AnalysisError(f"Record alpha={record.alpha:g} carries no solution.")
    if limit.n != spec.n:
        raise DimensionMismatch(
            f"Limit constant solved in dimension {limit.n}, problem has {spec.n}."
        )
    gamma = limit_gamma(spec.case)
    reference = limit_solution(limit, gamma)
    blown = blow_up(record.report.solution, spec.case, record.alpha, spec.p, reference.grid)
    height = reference.max_location[1]
    return ProfileComparison(
        record.alpha,
        gradient_gap(blown, reference),
        height,
        record.alpha * (1.0 - record.max_rho),
    )


# Files:


def write_sweep_csv(
    records: typing.Sequence[SweepRecord],
    path: str,
    *,
    provenance: typing.Optional[str] = None,
) -> None:
    write_table(path, SWEEP_HEADER, (r.row() for r in records), provenance=provenance)


def read_sweep_csv(path: str) -> typing.List[SweepRecord]:
    header, rows = read_table(path)
    if tuple(header) != SWEEP_HEADER:
        raise OutputError(
            f"Not a sweep table, header is {','.join(header)}.",
            location=Location(file_name=path),
        )
    records: typing.List[SweepRecord] = []
    for number, row in enumerate(rows, start=1):
        try:
            records.append(
                SweepRecord(
                    alpha=float(row[0]),
                    quotient=float(row[1]),
                    energy=float(row[2]),
                    max_value=float(row[3]),
                    max_rho=float(row[4]),
                    r_alpha=float(row[5]),
                    alpha_gap=float(row[6]),
                    iterations=int(row[7]),
                    residual=float(row[8]),
                    converged=row[9] == "true",
                )
            )
        except (ValueError, IndexError) as e:
            raise OutputError(
                f"Malformed sweep row {number}.",
                location=Location(file_name=path, field=f"row {number}"),
                original_exception=e,
            )
    return records


def write_fits_csv(
    fits: typing.Sequence[ScalingFit],
    path: str,
    *,
    provenance: typing.Optional[str] = None,
) -> None:
    write_table(path, FIT_HEADER, (f.row() for f in fits), provenance=provenance)


def write_plot_data(
    records: typing.Sequence[SweepRecord],
    spec: ProblemSpec,
    directory: str,
    *,
    provenance: typing.Optional[str] = None,
) -> typing.List[str]:
    """Two-column files: log alpha vs log M, alpha vs gap, alpha vs normalized quotient."""
    good = _converged(records)
    alphas = [r.alpha for r in good]
    beta = exponents(spec).quotient_beta
    files = {
        "blowup.dat": (
            [math.log(a) for a in alphas],
            [math.log(r.max_value) for r in good],
        ),
        "gap.dat": (alphas, [r.alpha_gap for r in good]),
        "normalized_quotient.dat": (alphas, [r.quotient / r.alpha**beta for r in good]),
    }
    written: typing.List[str] = []
    for name, columns in files.items():
        path = os.path.join(directory, name)
        write_columns(path, columns, provenance=provenance)
        written.append(path)
    return written
