# -*- coding: utf-8 -*-
"""Exceptions used in henonlab."""


from .location import Location

import typing


class HenonLabError(Exception):
    """Base class for all henonlab Exceptions."""

    exit_code = 1

    def __init__(
        self,
        *args: typing.Any,
        location: typing.Optional[Location] = None,
        original_exception: typing.Optional[Exception] = None,
    ) -> None:
        """Constructor."""
        super().__init__(*args)
        self.location = location
        self.original_exception = original_exception

    def set_location(self, location: Location) -> None:
        self.location = location

    def __str__(self) -> str:
        """Stringify exception."""
        prefix = f"Error in {self.location}" if self.location else "Error"

        postfix = ""
        if self.original_exception is not None:
            if isinstance(self.original_exception, AssertionError):
                postfix = "\n    Trigger: AssertionError."
            else:
                postfix = "\n    Trigger: " + str(self.original_exception)

        return f"{prefix}: {super().__str__()}{postfix}"


# Configuration and validation (exit code 2):


class ConfigError(HenonLabError):
    """Error raised while reading a run configuration."""

    exit_code = 2


class PreflightError(HenonLabError):
    """Error raised before any computation starts."""

    exit_code = 2


class ValidationError(HenonLabError):
    """A problem specification violates the admissible parameter ranges."""

    exit_code = 2


class ExponentOutOfRange(ValidationError):
    """p lies outside the open interval (2, critical exponent)."""

    pass


class BadDimension(ValidationError):
    """Half-dimension m < 2 or ambient dimension N < 3."""

    pass


class BadWeightExponent(ValidationError):
    """alpha is not a usable weight exponent for the selected case."""

    pass


# Geometry:


class DomainError(HenonLabError):
    """A point lies outside the domain of a change of variables."""

    pass


class SingularSample(HenonLabError):
    """A sample point is too close to the origin of the reduced ball."""

    pass


class MeshError(HenonLabError):
    """Error raised while building or using a meridian grid."""

    pass


class BadResolution(MeshError):
    """Node counts, box sizes or grading factors are unusable."""

    exit_code = 2


class BoundaryMismatch(MeshError):
    """A field does not honour the boundary data of its grid."""

    pass


# Numerics (exit code 1):


class SolverError(HenonLabError):
    """Error raised by a quotient minimization."""

    pass


class NotConverged(SolverError):
    """The iteration limit was hit before the residual dropped below tol."""

    def __init__(
        self, *args: typing.Any, report: typing.Any = None, **kwargs: typing.Any
    ) -> None:
        """Constructor."""
        super().__init__(*args, **kwargs)
        self.report = report


class DegenerateInit(SolverError):
    """The initial guess has no energy."""

    pass


class TruncationUnstable(SolverError):
    """A limit constant moved too much when the half-space box was doubled."""

    def __init__(
        self, *args: typing.Any, limit: typing.Any = None, **kwargs: typing.Any
    ) -> None:
        """Constructor."""
        super().__init__(*args, **kwargs)
        self.limit = limit


class AnalysisError(HenonLabError):
    """Error raised while post-processing sweep results."""

    pass


class InsufficientData(AnalysisError):
    """Not enough converged records for a fit."""

    pass


class DimensionMismatch(AnalysisError):
    """Records and limit constant live in different dimensions."""

    pass


class InterpolationOutOfRange(AnalysisError):
    """A blown-up profile does not cover the limit box."""

    pass


# Output (exit code 3):


class OutputError(HenonLabError):
    """Error raised while reading or writing result files."""

    exit_code = 3
