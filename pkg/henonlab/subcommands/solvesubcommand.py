# -*- coding: utf-8 -*-
"""solve: one least energy solution and its field snapshot."""


from .subcommand import Subcommand
from ..asymptotics import original_maximum
from ..config import RunConfig
from ..exceptions import ConfigError
from ..helper.csvio import write_table
from ..location import Location
from ..mesh import write_field_csv
from ..printer import h2, msg, warn
from ..solver import QuotientProblem, minimize_quotient, nehari_gap, pde_residual

import typing


SOLVE_HEADER = (
    "case",
    "dimension",
    "p",
    "alpha",
    "unrestricted",
    "quotient",
    "energy",
    "residual",
    "pde_residual",
    "nehari_gap",
    "max_value",
    "max_rho",
    "max_sigma",
    "r_alpha",
    "iterations",
    "converged",
    "start",
)


class SolveSubcommand(Subcommand):
    def __init__(self) -> None:
        super().__init__("solve", help_string="Solve for one alpha.")

    def __call__(self, *, parse_result: typing.Any, config: RunConfig) -> int:
        alphas = config.all_alphas
        if not alphas:
            raise ConfigError(
                "solve needs alpha in the config.", location=Location(field="alpha")
            )
        alpha = alphas[0]

        spec = config.spec(alpha)
        grid = config.build_grid()
        problem = QuotientProblem.for_spec(spec, grid, unrestricted=config.unrestricted)
        h2(f"Solving {spec} on {grid}")
        if spec.alpha_warning:
            warn(f"alpha={spec.alpha:g} is below the concentration regime.")

        report = minimize_quotient(
            problem,
            settings=config.solver_settings,
            allow_partial=config.allow_partial,
        )
        max_rho, r_alpha, m_alpha = original_maximum(report, spec)
        residual = pde_residual(report.solution, problem.weight, spec.alpha, spec.p)

        provenance = self.provenance(config)
        write_table(
            self.output_path(config, "solve.csv"),
            SOLVE_HEADER,
            [
                (
                    spec.case.value,
                    spec.dimension,
                    spec.p,
                    spec.alpha,
                    config.unrestricted,
                    report.quotient,
                    report.energy,
                    report.residual,
                    residual,
                    nehari_gap(report, spec.p),
                    m_alpha,
                    max_rho,
                    report.max_location[1],
                    r_alpha,
                    report.iterations,
                    report.converged,
                    report.start,
                )
            ],
            provenance=provenance,
        )
        write_field_csv(
            report.solution,
            self.output_path(config, "field.csv"),
            provenance=provenance,
        )
        msg(
            f"quotient {report.quotient:.10g}, M_alpha {m_alpha:.6g}, "
            f"r_alpha {r_alpha:.6f}"
        )
        return 0
