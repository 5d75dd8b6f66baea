# -*- coding: utf-8 -*-
"""limit: the half-space constant m_(gamma,p) and its truncation study."""


from .subcommand import Subcommand
from ..config import RunConfig
from ..exceptions import TruncationUnstable
from ..helper.csvio import write_table
from ..printer import h2, msg
from ..solver import LimitConstant, solve_limit_constant

import math
import typing


LIMIT_HEADER = (
    "gamma",
    "p",
    "n",
    "value",
    "s_max",
    "t_max",
    "n_s",
    "n_t",
    "doubled_value",
    "truncation_change",
    "maximizer_height",
    "residual",
    "converged",
)


def _row(limit: LimitConstant) -> typing.Tuple[typing.Union[float, int, bool], ...]:
    change = limit.truncation_change
    return (
        limit.gamma,
        limit.p,
        limit.n,
        limit.value,
        limit.box.s_max,
        limit.box.t_max,
        limit.resolutions[0],
        limit.resolutions[1],
        math.nan if limit.doubled_value is None else limit.doubled_value,
        math.nan if change is None else change,
        limit.maximizer_height,
        limit.report.residual,
        limit.report.converged,
    )


class LimitSubcommand(Subcommand):
    def __init__(self) -> None:
        super().__init__("limit", help_string="Solve the half-space limit problem.")

    def __call__(self, *, parse_result: typing.Any, config: RunConfig) -> int:
        gamma = config.limit_gamma
        h2(f"Limit constant gamma={gamma:g}, p={config.p:g}, n={config.n}")
        path = self.output_path(config, "limit.csv")
        try:
            limit = solve_limit_constant(
                gamma,
                config.p,
                config.n,
                config.limit_box,
                config.limit.resolutions,
                settings=config.solver_settings,
                check_truncation=config.limit.check_truncation,
            )
        except TruncationUnstable as e:
            if e.limit is not None:
                write_table(
                    path, LIMIT_HEADER, [_row(e.limit)], provenance=self.provenance(config)
                )
            raise

        write_table(path, LIMIT_HEADER, [_row(limit)], provenance=self.provenance(config))
        msg(f"m_(gamma={gamma:g}, p={config.p:g}) = {limit.value:.10g}")
        return 0
