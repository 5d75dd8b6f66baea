# -*- coding: utf-8 -*-
"""Problem specifications, symmetry classes and exponent bookkeeping.

Every other module works with the reduced dimension n:

  * FullHenon and PartialHenon live on B_{2m} and are studied through the
    reduced problem on B_{m+1}, so n = m + 1;
  * Hyperplane is solved directly on B_N, so n = N.

With this convention one set of formulas covers all three cases.
"""


from __future__ import annotations

from .exceptions import (
    BadDimension,
    BadWeightExponent,
    ExponentOutOfRange,
    ValidationError,
)

from enum import Enum, unique
import math
import typing


# Results are only guaranteed beyond an unquantified alpha_0 > 4.
ALPHA_WARNING_THRESHOLD = 4.0


@unique
class ProblemCase(Enum):
    """Which weight h(x) the equation carries."""

    FULL_HENON = "full_henon"  # |x|^alpha on B_{2m}
    PARTIAL_HENON = "partial_henon"  # |y_2|^alpha on B_{2m}
    HYPERPLANE = "hyperplane"  # |x_N|^alpha on B_N

    @property
    def is_reduced(self) -> bool:
        return self is not ProblemCase.HYPERPLANE


@unique
class SymmetryClass(Enum):
    """Symmetry imposed on the admissible functions."""

    DOUBLY_SYMMETRIC = "doubly_symmetric"  # O(m) x O(m) on R^{2m}
    AXISYM = "axisym"  # rotations about the last axis
    AXISYM_EVEN = "axisym_even"  # AXISYM and even in the last coordinate


class ProblemSpec(typing.NamedTuple):
    """One Henon type problem: case, reduced dimension n, p and alpha."""

    case: ProblemCase
    n: int
    p: float
    alpha: float

    @staticmethod
    def full_henon(m: int, p: float, alpha: float) -> ProblemSpec:
        return ProblemSpec(ProblemCase.FULL_HENON, m + 1, p, alpha)

    @staticmethod
    def partial_henon(m: int, p: float, alpha: float) -> ProblemSpec:
        return ProblemSpec(ProblemCase.PARTIAL_HENON, m + 1, p, alpha)

    @staticmethod
    def hyperplane(N: int, p: float, alpha: float) -> ProblemSpec:
        return ProblemSpec(ProblemCase.HYPERPLANE, N, p, alpha)

    @staticmethod
    def create(case: ProblemCase, dimension: int, p: float, alpha: float) -> ProblemSpec:
        """Build from the user facing dimension (m or N, depending on case)."""
        if case.is_reduced:
            return ProblemSpec(case, dimension + 1, p, alpha)
        return ProblemSpec(case, dimension, p, alpha)

    @property
    def dimension(self) -> int:
        """The user facing dimension: m for reduced cases, N otherwise."""
        return self.n - 1 if self.case.is_reduced else self.n

    @property
    def original_dimension(self) -> int:
        """Dimension of the ball the equation is posed on."""
        return 2 * (self.n - 1) if self.case.is_reduced else self.n

    @property
    def symmetry(self) -> SymmetryClass:
        """Symmetry class of the problem that is actually discretized."""
        if self.case is ProblemCase.HYPERPLANE:
            return SymmetryClass.AXISYM_EVEN
        return SymmetryClass.AXISYM

    @property
    def original_symmetry(self) -> SymmetryClass:
        if self.case is ProblemCase.HYPERPLANE:
            return SymmetryClass.AXISYM_EVEN
        return SymmetryClass.DOUBLY_SYMMETRIC

    @property
    def alpha_warning(self) -> bool:
        return self.alpha <= ALPHA_WARNING_THRESHOLD

    def with_alpha(self, alpha: float) -> ProblemSpec:
        return self._replace(alpha=alpha)

    def __str__(self) -> str:
        name = "m" if self.case.is_reduced else "N"
        return (
            f"{self.case.value} ({name}={self.dimension}, p={self.p:g}, "
            f"alpha={self.alpha:g})"
        )


class ValidationResult(typing.NamedTuple):
    """Outcome of `validate`: errors make a spec unusable, warnings do not."""

    errors: typing.Tuple[ValidationError, ...]
    warnings: typing.Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def status(self) -> str:
        if self.errors:
            return "error"
        if self.warnings:
            return "warning"
        return "ok"

    def raise_for_errors(self) -> None:
        if self.errors:
            raise self.errors[0]


class Exponents(typing.NamedTuple):
    """Scaling exponents of a problem.

    blowup: M_alpha ~ alpha^blowup
    quotient_beta: minimal quotient ~ alpha^quotient_beta
    energy_gamma: energy of the least energy solution ~ alpha^energy_gamma
    """

    blowup: float
    quotient_beta: float
    energy_gamma: float


def critical_exponent(n: int) -> float:
    """Sobolev critical exponent 2n/(n-2) of dimension n."""
    assert n >= 3
    return 2.0 * n / (n - 2)


def validate(spec: ProblemSpec) -> ValidationResult:
    """Check a spec against the admissible ranges.

    Total: never raises, whatever the input values are.
    """
    errors: typing.List[ValidationError] = []
    warnings: typing.List[str] = []

    dimension_ok = True
    if spec.case.is_reduced and spec.n - 1 < 2:
        errors.append(BadDimension(f"Half-dimension m={spec.n - 1} must be >= 2."))
        dimension_ok = False
    elif not spec.case.is_reduced and spec.n < 3:
        errors.append(BadDimension(f"Dimension N={spec.n} must be >= 3."))
        dimension_ok = False

    p = spec.p
    if not isinstance(p, (int, float)) or not math.isfinite(p) or p <= 2.0:
        errors.append(ExponentOutOfRange(f"p={p} must be a finite number > 2."))
    elif dimension_ok and p >= critical_exponent(spec.n):
        bound = critical_exponent(spec.n)
        errors.append(
            ExponentOutOfRange(
                f"p={p:g} must be below the critical exponent {bound:g} of "
                f"dimension {spec.n}."
            )
        )

    alpha = spec.alpha
    if not isinstance(alpha, (int, float)) or not math.isfinite(alpha) or alpha <= 0:
        errors.append(BadWeightExponent(f"alpha={alpha} must be a finite number > 0."))
    elif spec.case.is_reduced and alpha <= 2.0:
        errors.append(
            BadWeightExponent(
                f"alpha={alpha:g} makes the reduced weight singular at the "
                "origin; use alpha > 2."
            )
        )
    elif alpha <= ALPHA_WARNING_THRESHOLD:
        warnings.append(
            f"alpha={alpha:g} <= {ALPHA_WARNING_THRESHOLD:g}: concentration "
            "results only hold for large alpha."
        )

    return ValidationResult(tuple(errors), tuple(warnings))


def ensure_valid(spec: ProblemSpec) -> ValidationResult:
    """Validate and raise the first error, if any."""
    result = validate(spec)
    result.raise_for_errors()
    return result


def exponents(spec: ProblemSpec) -> Exponents:
    """Scaling exponents computed from (n, p)."""
    ensure_valid(spec)
    n, p = spec.n, spec.p
    return Exponents(
        blowup=2.0 / (p - 2.0),
        quotient_beta=(2.0 * n - p * (n - 2)) / p,
        energy_gamma=(2.0 * n - p * (n - 2)) / (p - 2.0),
    )


def limit_gamma(case: ProblemCase) -> float:
    """Decay rate gamma of the half-space limit problem of a case.

    Blowing the reduced weights up at the concentration pole gives
    e^{-t/2} for both reduced cases and e^{-t} for the hyperplane weight.
    """
    if case is ProblemCase.HYPERPLANE:
        return 1.0
    return 0.5


def gamma_scaling_exponent(n: int, p: float) -> float:
    """Exponent e in m_{gamma,p} = gamma^e m_{1,p}, from w(x) -> w(gamma x)."""
    return 2.0 - n + 2.0 * n / p
