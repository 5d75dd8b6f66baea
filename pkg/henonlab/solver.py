# -*- coding: utf-8 -*-
"""Least energy solutions as minimizers of weighted Rayleigh quotients.

For a weight h and p > 2 the quotient of a nonnegative w is

    R[w] = E(w) / N(w)^{2/p},   E(w) = int |grad w|^2,   N(w) = int h |w|^p.

A minimizer w, rescaled by u = lambda w with lambda^{p-2} = E(w) / N(w),
solves -Delta u = h u^{p-1} and satisfies E(u) = N(u) = R[w]^{p/(p-2)}.

The minimization is a projected gradient method on the discrete quotient.
The gradient is preconditioned with the stiffness matrix A, which turns the
unit step into the normalized fixed point map

    w -> (E/N) A^{-1} (M h w^{p-1}),

and every trial point is projected onto the nonnegative (and, for
AXISYM_EVEN, mirror symmetric) cone before the Armijo test.
"""


from __future__ import annotations

from .exceptions import (
    DegenerateInit,
    ExponentOutOfRange,
    MeshError,
    NotConverged,
    SolverError,
    TruncationUnstable,
    ValidationError,
)
from .helper.linesearch import BacktrackingLineSearch
from .helper.poisson import PoissonSolver
from .mesh import (
    Field,
    HalfSpaceBox,
    MeridianGrid,
    Pole,
    apply_laplacian,
    build_grid,
)
from .model import (
    ProblemCase,
    ProblemSpec,
    SymmetryClass,
    critical_exponent,
    ensure_valid,
    gamma_scaling_exponent,
)
from .printer import debug, info, iteration, verbose, warn
from .reduction import WeightKind

from enum import Enum, unique
import math
import numpy as np
import typing


@unique
class InitialGuess(Enum):
    """Starting fields of the multi-start."""

    BUMP = "bump"  # Gaussian at the expected concentration point
    CAP = "cap"  # plateau on a polar cap next to the boundary
    RANDOM = "random"  # uniform random nonnegative values


class SolverSettings(typing.NamedTuple):
    """Knobs of `minimize_quotient`."""

    tol: float = 1e-6
    max_iter: int = 5000
    contraction: float = 0.5
    armijo: float = 1e-4
    max_backtracks: int = 30
    poisson: str = "direct"
    poisson_tol: float = 1e-12
    starts: typing.Tuple[InitialGuess, ...] = (
        InitialGuess.BUMP,
        InitialGuess.CAP,
        InitialGuess.RANDOM,
    )
    seed: int = 0


class QuotientProblem(typing.NamedTuple):
    """A quotient to minimize: grid, weight and exponents."""

    grid: MeridianGrid
    weight: WeightKind
    alpha: float
    p: float
    symmetry: SymmetryClass
    gamma: float = 1.0

    @staticmethod
    def for_spec(
        spec: ProblemSpec, grid: MeridianGrid, *, unrestricted: bool = False
    ) -> QuotientProblem:
        """The (restricted or unrestricted) quotient of a problem.

        PartialHenon: S' with h_alpha, unrestricted S with |z|^{(alpha-2)/2}.
        FullHenon: S with |z|^{(alpha-2)/2} in both cases.
        Hyperplane: K' with |z_N|^alpha (even in z_N), unrestricted K with
        |z|^alpha.
        """
        ensure_valid(spec)
        if spec.case is ProblemCase.HYPERPLANE:
            if unrestricted:
                weight, symmetry = WeightKind.RADIAL_POWER, SymmetryClass.AXISYM
            else:
                weight, symmetry = WeightKind.HYPERPLANE_DIRECT, SymmetryClass.AXISYM_EVEN
        elif spec.case is ProblemCase.PARTIAL_HENON and not unrestricted:
            weight, symmetry = WeightKind.PARTIAL_REDUCED, SymmetryClass.AXISYM
        else:
            weight, symmetry = WeightKind.FULL_HENON_REDUCED, SymmetryClass.AXISYM
        return QuotientProblem(grid, weight, spec.alpha, spec.p, symmetry)

    @staticmethod
    def limit(gamma: float, p: float, grid: MeridianGrid) -> QuotientProblem:
        """m_{gamma,p} on a half-space box."""
        return QuotientProblem(
            grid, WeightKind.EXPONENTIAL, 0.0, p, SymmetryClass.AXISYM, gamma
        )

    @property
    def concentration_pole(self) -> Pole:
        """Where on the sphere the minimizers are expected to peak."""
        if self.weight is WeightKind.PARTIAL_REDUCED:
            return Pole.SOUTH
        if self.weight is WeightKind.HYPERPLANE_DIRECT:
            return Pole.BOTH
        return Pole.NORTH

    def validate(self) -> None:
        if self.weight.on_half_space == self.grid.is_ball:
            raise MeshError(f"Weight {self.weight.value} does not fit {self.grid}.")
        if self.symmetry is SymmetryClass.DOUBLY_SYMMETRIC:
            raise ValidationError(
                "Doubly symmetric problems are solved through their reduction."
            )
        if self.symmetry is SymmetryClass.AXISYM_EVEN and not self.grid.angular_symmetric:
            raise MeshError("Even problems need a mirror symmetric sigma grid.")
        if not (self.p > 2.0 and self.p < critical_exponent(self.grid.n)):
            raise ExponentOutOfRange(f"p={self.p} is not subcritical in {self.grid.n}D.")
        if self.weight.needs_alpha_above_two and not self.alpha > 2.0:
            raise ValidationError(f"alpha={self.alpha} must exceed 2 for this weight.")
        if self.weight is WeightKind.EXPONENTIAL and not self.gamma > 0.0:
            raise ValidationError(f"gamma={self.gamma} must be positive.")

    def __str__(self) -> str:
        if self.weight is WeightKind.EXPONENTIAL:
            return f"limit quotient gamma={self.gamma:g}, p={self.p:g} on {self.grid}"
        return (
            f"{self.weight.value} quotient alpha={self.alpha:g}, p={self.p:g} "
            f"on {self.grid}"
        )


class SolveReport(typing.NamedTuple):
    """Outcome of a minimization, solution already Nehari normalized."""

    solution: Field
    quotient: float
    energy: float
    residual: float
    max_value: float
    max_location: typing.Tuple[float, float]
    iterations: int
    converged: bool
    start: str = ""
    monotonicity_defect: float = 0.0
    start_spread: float = 0.0


def nehari_gap(report: SolveReport, p: float) -> float:
    """Relative deviation of the energy from quotient^{p/(p-2)}."""
    target = report.quotient ** (p / (p - 2.0))
    return abs(report.energy - target) / target


class LimitConstant(typing.NamedTuple):
    """m_{gamma,p} on a truncated half-space, with its truncation study."""

    gamma: float
    p: float
    n: int
    value: float
    box: HalfSpaceBox
    resolutions: typing.Tuple[int, int]
    report: SolveReport
    doubled_value: typing.Optional[float] = None

    @property
    def truncation_change(self) -> typing.Optional[float]:
        if self.doubled_value is None:
            return None
        return abs(self.doubled_value - self.value) / self.value

    @property
    def maximizer_height(self) -> float:
        """t coordinate of the maximum of the limit minimizer."""
        return self.report.max_location[1]

    def value_at(self, gamma: float) -> float:
        """m_{gamma',p} from this constant through the gamma scaling identity."""
        assert gamma > 0.0
        exponent = gamma_scaling_exponent(self.n, self.p)
        return self.value * (gamma / self.gamma) ** exponent


# Discrete quotient:


class _Functional:
    """E, N and R on the unknowns of a problem."""

    def __init__(self, problem: QuotientProblem) -> None:
        grid = problem.grid
        ops = grid.operators
        interior = ops.interior
        self.p = problem.p
        self.A = ops.stiffness[interior][:, interior].tocsr()
        self.M = np.asarray(ops.mass[interior])
        # int h over each control volume, and h averaged over it.
        weighted = grid.weighted_mass(problem.weight, problem.alpha, gamma=problem.gamma)
        self.Mh = weighted[interior]
        self.h = self.Mh / self.M

    def energy(self, w: np.ndarray) -> float:
        return float(np.dot(w, self.A @ w))

    def norm(self, w: np.ndarray) -> float:
        return float(np.dot(self.Mh, np.abs(w) ** self.p))

    def value(self, w: np.ndarray) -> float:
        norm = self.norm(w)
        if not norm > 0.0:
            return math.inf
        return self.energy(w) / norm ** (2.0 / self.p)

    def nonlinear(self, w: np.ndarray) -> np.ndarray:
        return np.abs(w) ** (self.p - 2.0) * w

    def residual(self, w: np.ndarray) -> float:
        """max |L w + (E/N) h w^{p-1}| / max |(E/N) h w^{p-1}|, scale invariant."""
        norm = self.norm(w)
        if not norm > 0.0:
            return 0.0
        lam = self.energy(w) / norm
        source = lam * self.h * self.nonlinear(w)
        defect = -(self.A @ w) / self.M + source
        return _ratio(float(np.max(np.abs(defect))), float(np.max(np.abs(source))))


def _ratio(numerator: float, denominator: float) -> float:
    if denominator > 0.0:
        return numerator / denominator
    return 0.0 if numerator == 0.0 else math.inf


def _projection(
    problem: QuotientProblem,
) -> typing.Callable[[np.ndarray], np.ndarray]:
    grid = problem.grid
    mirror: typing.Optional[np.ndarray] = None
    if problem.symmetry is SymmetryClass.AXISYM_EVEN:
        count = int(np.count_nonzero(grid.operators.interior))
        ids = grid.extend(np.arange(count, dtype=float))
        mirror = np.rint(grid.restrict(ids[:, ::-1])).astype(np.int64)

    def project(w: np.ndarray) -> np.ndarray:
        w = np.maximum(w, 0.0)
        if mirror is not None:
            w = 0.5 * (w + w[mirror])
        return w

    return project


def initial_guess(
    problem: QuotientProblem, kind: InitialGuess, rng: np.random.Generator
) -> np.ndarray:
    """A nonnegative starting field, as unknowns."""
    grid = problem.grid
    a, b = grid.coordinates()

    if kind is InitialGuess.RANDOM:
        values = rng.random(grid.shape)
        if grid.is_ball:
            values[0, :] = values[0, 0]
        return grid.restrict(values)

    if grid.is_ball:
        radius = float(grid.radial_nodes[-1])
        x, y = a * np.cos(b), a * np.sin(b)
        pole = problem.concentration_pole
        heights = {Pole.NORTH: (1.0,), Pole.SOUTH: (-1.0,), Pole.BOTH: (1.0, -1.0)}[pole]
        values = np.zeros(grid.shape)
        if kind is InitialGuess.BUMP:
            alpha = max(problem.alpha, 4.0)
            center = radius * max(0.5, 1.0 - 2.0 / alpha)
            width = radius * max(3.0 / alpha, 0.02)
            for sign in heights:
                values += np.exp(-((x - sign * center) ** 2 + y * y) / (2 * width**2))
        else:
            shell = (a / radius) * (1.0 - a / radius)
            for sign in heights:
                values += np.where(sign * np.cos(b) >= math.cos(math.pi / 4), shell, 0.0)
    else:
        gamma = problem.gamma
        if kind is InitialGuess.BUMP:
            center, width = 2.0 / gamma, 1.0 / gamma
            values = np.exp(-(a * a + (b - center) ** 2) / (2 * width**2))
        else:
            s_max = float(grid.radial_nodes[-1])
            values = np.where(
                a <= 0.25 * s_max, b * np.exp(-0.5 * gamma * b) * (1.0 - a / s_max), 0.0
            )
    return grid.restrict(values)


def monotonicity_defect(field: Field, pole: Pole = Pole.NORTH) -> float:
    """Largest increase away from the concentration set, relative to the max.

    Half-space fields should not increase in s at fixed t. Ball fields
    should not increase in sigma when moving away from `pole` at fixed rho.
    """
    values = field.values
    top = float(np.max(np.abs(values)))
    if top == 0.0:
        return 0.0
    if not field.grid.is_ball:
        increase = np.diff(values, axis=0)
    else:
        steps = np.diff(values, axis=1)
        if pole is Pole.NORTH:
            increase = steps
        elif pole is Pole.SOUTH:
            increase = -steps
        else:
            half = (values.shape[1] - 1) // 2
            increase = np.concatenate((steps[:, :half], -steps[:, -half:]), axis=1)
    return max(0.0, float(np.max(increase))) / top


def _minimize_from(
    problem: QuotientProblem,
    w0: np.ndarray,
    settings: SolverSettings,
    label: str,
) -> SolveReport:
    functional = _Functional(problem)
    project = _projection(problem)
    p = problem.p

    w = project(w0)
    norm = functional.norm(w)
    if not functional.energy(w) > 0.0 or not norm > 0.0:
        raise DegenerateInit(f"Initial guess {label} has no energy.")
    w = w / norm ** (1.0 / p)

    poisson = PoissonSolver(functional.A, method=settings.poisson, tol=settings.poisson_tol)
    search = BacktrackingLineSearch(
        contraction_factor=settings.contraction,
        sufficient_decrease=settings.armijo,
        max_iterations=settings.max_backtracks,
    )

    value = functional.value(w)
    residual = functional.residual(w)
    iterations = 0
    converged = residual <= settings.tol
    while not converged and iterations < settings.max_iter:
        energy, norm = functional.energy(w), functional.norm(w)
        lam = energy / norm
        source = functional.Mh * functional.nonlinear(w)
        direction = lam * poisson.solve(source) - w
        gradient = (2.0 / norm ** (2.0 / p)) * (functional.A @ w - lam * source)

        result = search.search(
            functional.value, w, direction, value, gradient, projection=project
        )
        iterations += 1
        if result.step == 0.0:
            debug(f"{label}: line search stalled at quotient {value:.12g}.")
            break
        assert result.value <= value, "Quotient increased on an accepted step."

        value = result.value
        w = result.x / functional.norm(result.x) ** (1.0 / p)
        residual = functional.residual(w)
        converged = residual <= settings.tol
        iteration(
            label, iterations, quotient=value, residual=residual, step=result.step
        )

    return _report(problem, functional, w, residual, iterations, converged, label)


def _report(
    problem: QuotientProblem,
    functional: _Functional,
    w: np.ndarray,
    residual: float,
    iterations: int,
    converged: bool,
    label: str,
) -> SolveReport:
    p = problem.p
    lam = functional.energy(w) / functional.norm(w)
    u = lam ** (1.0 / (p - 2.0)) * w
    solution = Field.from_unknowns(problem.grid, u)
    pole = problem.concentration_pole if problem.grid.is_ball else Pole.NORTH
    return SolveReport(
        solution=solution,
        quotient=functional.value(w),
        energy=functional.energy(u),
        residual=residual,
        max_value=solution.max_value,
        max_location=solution.max_location,
        iterations=iterations,
        converged=converged,
        start=label,
        monotonicity_defect=monotonicity_defect(solution, pole),
    )


def minimize_quotient(
    problem: QuotientProblem,
    init: typing.Union[Field, InitialGuess, None] = None,
    *,
    settings: SolverSettings = SolverSettings(),
    allow_partial: bool = False,
) -> SolveReport:
    """Minimize the quotient of `problem`.

    Without `init` every start of `settings.starts` is run and the lowest
    converged quotient wins. A run that hits `max_iter` raises NotConverged
    carrying the partial report, unless `allow_partial` is set, in which
    case the report comes back with converged=False.
    """
    problem.validate()
    rng = np.random.default_rng(settings.seed)

    starts: typing.List[typing.Tuple[str, np.ndarray]] = []
    if isinstance(init, Field):
        if init.grid != problem.grid:
            raise MeshError("Initial field lives on a different grid.")
        starts.append(("given", init.unknowns()))
    else:
        kinds = (init,) if init is not None else settings.starts
        if not kinds:
            raise SolverError("No initial guess to start from.")
        for kind in kinds:
            starts.append((kind.value, initial_guess(problem, kind, rng)))

    reports: typing.List[SolveReport] = []
    for label, w0 in starts:
        try:
            reports.append(_minimize_from(problem, w0, settings, label))
        except DegenerateInit:
            if len(starts) == 1:
                raise
            warn(f"Start {label} is degenerate for {problem}, skipped.")
    if not reports:
        raise DegenerateInit(f"All initial guesses are degenerate for {problem}.")

    converged = [r for r in reports if r.converged]
    pool = converged if converged else reports
    best = min(pool, key=lambda r: r.quotient)
    spread = 0.0
    if len(converged) > 1:
        values = [r.quotient for r in converged]
        spread = (max(values) - min(values)) / min(values)
        if spread > settings.tol:
            info(
                f"Starts disagree on {problem}: quotients "
                + ", ".join(f"{r.start}={r.quotient:.10g}" for r in converged)
            )
    best = best._replace(start_spread=spread)

    if best.monotonicity_defect > 1e-6:
        debug(f"Minimizer is not monotone: defect {best.monotonicity_defect:.3g}.")

    if not best.converged:
        message = (
            f"{problem}: residual {best.residual:.3g} above {settings.tol:g} after "
            f"{best.iterations} iterations."
        )
        if not allow_partial:
            raise NotConverged(message, report=best)
        warn(message)
    else:
        verbose(
            f"{problem}: quotient {best.quotient:.10g} after {best.iterations} "
            f"iterations (start {best.start})."
        )
    return best


def solve(
    spec: ProblemSpec,
    grid: MeridianGrid,
    *,
    settings: SolverSettings = SolverSettings(),
    allow_partial: bool = False,
) -> SolveReport:
    """Least energy solution of the symmetric (restricted) problem of `spec`."""
    return minimize_quotient(
        QuotientProblem.for_spec(spec, grid),
        settings=settings,
        allow_partial=allow_partial,
    )


def solve_unrestricted(
    spec: ProblemSpec,
    grid: MeridianGrid,
    *,
    settings: SolverSettings = SolverSettings(),
    allow_partial: bool = False,
) -> SolveReport:
    """S_{alpha,p} (weight |z|^{(alpha-2)/2}) or K_{alpha,p} (weight |z|^alpha).

    Minimizers of the unrestricted quotients are axially symmetric up to a
    rotation, so the meridian discretization captures them.
    """
    return minimize_quotient(
        QuotientProblem.for_spec(spec, grid, unrestricted=True),
        settings=settings,
        allow_partial=allow_partial,
    )


def default_limit_box(gamma: float) -> HalfSpaceBox:
    """HalfSpaceBox() stretched by 1/gamma, the decay length of e^{-gamma t}.

    The limit minimizer for gamma is the one for gamma = 1 stretched by
    1/gamma, so with fixed node counts every gamma sees the same discrete
    problem.
    """
    assert gamma > 0.0
    unit = HalfSpaceBox()
    return HalfSpaceBox(unit.s_max / gamma, unit.t_max / gamma)


def solve_limit_constant(
    gamma: float,
    p: float,
    n: int,
    box: typing.Optional[HalfSpaceBox] = None,
    resolutions: typing.Tuple[int, int] = (48, 96),
    *,
    settings: SolverSettings = SolverSettings(),
    check_truncation: bool = True,
    truncation_tolerance: float = 0.01,
) -> LimitConstant:
    """m_{gamma,p}: minimal energy under int e^{-gamma t} w^p = 1 on a box.

    Without a box the default one for gamma is used. The truncation check
    solves again on the box with both sides doubled (same spacing) and
    raises TruncationUnstable if the value moves by more than
    `truncation_tolerance`.
    """
    if not (isinstance(gamma, (int, float)) and math.isfinite(gamma) and gamma > 0):
        raise ValidationError(f"gamma={gamma} must be a positive number.")
    if n < 3 or not (2.0 < p < critical_exponent(n)):
        raise ExponentOutOfRange(f"p={p} is not subcritical in dimension {n}.")

    if box is None:
        box = default_limit_box(gamma)
    grid = build_grid(box, n, resolutions)
    report = minimize_quotient(QuotientProblem.limit(gamma, p, grid), settings=settings)
    limit = LimitConstant(gamma, p, n, report.quotient, box, tuple(resolutions), report)
    if not check_truncation:
        return limit

    doubled_box = HalfSpaceBox(2.0 * box.s_max, 2.0 * box.t_max)
    doubled = build_grid(
        doubled_box, n, (2 * resolutions[0] - 1, 2 * resolutions[1] - 1)
    )
    doubled_report = minimize_quotient(
        QuotientProblem.limit(gamma, p, doubled), settings=settings
    )
    limit = limit._replace(doubled_value=doubled_report.quotient)
    change = limit.truncation_change
    assert change is not None
    verbose(
        f"m_(gamma={gamma:g}, p={p:g}) = {limit.value:.10g}, doubled box "
        f"{doubled_report.quotient:.10g} (change {change:.3g})."
    )
    if change > truncation_tolerance:
        raise TruncationUnstable(
            f"Limit constant changed by {100 * change:.2f}% on the doubled box.",
            limit=limit,
        )
    return limit


def pde_residual(
    u: Field, weight: WeightKind, alpha: float, p: float, *, gamma: float = 1.0
) -> float:
    """max |Delta u + h |u|^{p-2} u| / max |h |u|^{p-2} u| over unknown nodes.

    h is the weight averaged over each control volume, as the quotient sees
    it. 0 for u = 0.
    """
    grid = u.grid
    laplacian = apply_laplacian(u).values
    h = grid.cell_weight(weight, alpha, gamma=gamma)
    source = h * np.abs(u.values) ** (p - 2.0) * u.values
    inner = ~grid.dirichlet_mask()
    defect = np.abs(laplacian + source)[inner]
    return _ratio(float(np.max(defect)), float(np.max(np.abs(source[inner]))))


HALF_BALL_WEIGHTS = {
    WeightKind.FULL_HENON_REDUCED: WeightKind.FULL_HENON_HALF_BALL,
    WeightKind.PARTIAL_REDUCED: WeightKind.PARTIAL_HALF_BALL,
}


def rescale_to_half_unit_ball(w: Field, p: float) -> Field:
    """v(z) = 4^{1/(p-2)} w(2z): a solution on B(0,1) -> one on B(0,1/2).

    The radius-1/2 grid is the unit grid scaled by 1/2, so no interpolation
    is involved.
    """
    assert w.grid.is_ball and p > 2.0
    return Field(
        w.grid.scaled(0.5),
        4.0 ** (1.0 / (p - 2.0)) * w.values,
        boundary=w.boundary,
    )
