# -*- coding: utf-8 -*-
"""reduce-check: the Laplacian correspondence on the analytic test suite."""


from .subcommand import Subcommand
from ..config import RunConfig
from ..exceptions import ConfigError
from ..helper.csvio import write_table
from ..location import Location
from ..printer import fail, h2, msg, success
from ..reduction import (
    ANALYTIC_SUITE,
    correspondence_convergence,
    laplacian_correspondence_residual,
    sample_points,
)

import typing


RESIDUAL_HEADER = ("function", "m", "step", "residual")
SLOPE_HEADER = ("function", "m", "slope")

# Chain rule evaluation has to reproduce the identity up to rounding.
EXACT_TOLERANCE = 1e-10


class ReduceCheckSubcommand(Subcommand):
    def __init__(self) -> None:
        super().__init__(
            "reduce-check", help_string="Check the Laplacian correspondence."
        )

    def __call__(self, *, parse_result: typing.Any, config: RunConfig) -> int:
        if not config.case.is_reduced:
            raise ConfigError(
                f"reduce-check does not apply to {config.case.value}.",
                location=Location(field="case"),
            )
        m = config.dimension
        check = config.reduce_check
        samples = sample_points(check.samples, seed=config.seed)
        h2(f"Laplacian correspondence for m={m} on {check.samples} samples")

        residuals: typing.List[typing.Tuple[str, int, typing.Union[str, float], float]] = []
        slopes: typing.List[typing.Tuple[str, int, float]] = []
        exit_code = 0
        for v_test in ANALYTIC_SUITE:
            exact = laplacian_correspondence_residual(
                v_test, m, samples, floor=check.floor
            )
            residuals.append((v_test.name, m, "exact", exact))
            if exact > EXACT_TOLERANCE:
                fail(f"{v_test.name}: residual {exact:.3g}.")
                exit_code = 1
            else:
                success(f"{v_test.name}: residual {exact:.3g}.", verbosity=1)

            study = correspondence_convergence(
                v_test, m, samples, check.steps, floor=check.floor
            )
            for h, e in zip(study.steps, study.errors):
                residuals.append((v_test.name, m, h, e))
            slopes.append((v_test.name, m, study.slope))
            msg(f"{v_test.name}: observed order {study.slope:.3f}")

        provenance = self.provenance(config)
        write_table(
            self.output_path(config, "reduce_check.csv"),
            RESIDUAL_HEADER,
            residuals,
            provenance=provenance,
        )
        write_table(
            self.output_path(config, "reduce_slopes.csv"),
            SLOPE_HEADER,
            slopes,
            provenance=provenance,
        )
        return exit_code
