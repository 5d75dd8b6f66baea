# -*- coding: utf-8 -*-
"""sweep: solve for every configured alpha and fit the scaling laws."""


from .subcommand import Subcommand
from ..asymptotics import (
    ScalingFit,
    SweepRecord,
    compare_limit,
    fit_blowup,
    fit_energy,
    fit_quotient,
    gap_law,
    profile_comparison,
    run_sweep,
    write_fits_csv,
    write_plot_data,
    write_sweep_csv,
)
from ..config import RunConfig
from ..exceptions import AnalysisError, ConfigError
from ..helper.csvio import write_table
from ..location import Location
from ..model import ProblemSpec
from ..printer import h2, msg, warn
from ..solver import solve_limit_constant

import typing


COMPARISON_HEADER = ("alpha", "normalized_quotient", "target", "target_gamma", "factor")
PROFILE_HEADER = ("alpha", "gradient_gap", "limit_height", "blown_up_height")


def scaling_fits(
    records: typing.Sequence[SweepRecord], spec: ProblemSpec
) -> typing.List[ScalingFit]:
    """Every fit the records allow; missing ones are warned about."""
    fits: typing.List[ScalingFit] = []
    for fit in (
        lambda: fit_blowup(records, spec.p),
        lambda: fit_quotient(records, spec),
        lambda: fit_energy(records, spec),
    ):
        try:
            fits.append(fit())
        except AnalysisError as e:
            warn(str(e))
    for f in fits:
        msg(
            f"{f.quantity}: slope {f.slope:.4f} (target {f.target:.4f}, "
            f"deviation {100 * f.relative_deviation:.1f}%)"
        )
    return fits


class SweepSubcommand(Subcommand):
    def __init__(self) -> None:
        super().__init__("sweep", help_string="Solve for a list of alphas.")

    def setup_subparser(self, subparser: typing.Any) -> None:
        subparser.add_argument(
            "--compare-limit",
            dest="compare_limit",
            action="store_true",
            help="Also solve the half-space limit problem and compare with it.",
        )

    def __call__(self, *, parse_result: typing.Any, config: RunConfig) -> int:
        alphas = config.alphas or config.all_alphas
        if not alphas:
            raise ConfigError(
                "sweep needs a list of alphas.", location=Location(field="alphas")
            )
        spec = config.spec(alphas[0])
        grid = config.build_grid()
        provenance = self.provenance(config)

        records = run_sweep(
            spec,
            alphas,
            grid,
            settings=config.solver_settings,
            unrestricted=config.unrestricted,
            threads=config.threads,
        )
        write_sweep_csv(
            records, self.output_path(config, "sweep.csv"), provenance=provenance
        )
        write_fits_csv(
            scaling_fits(records, spec),
            self.output_path(config, "fits.csv"),
            provenance=provenance,
        )
        write_plot_data(records, spec, config.output, provenance=provenance)

        try:
            law = gap_law(records)
            msg(f"alpha (1 - r_alpha): {law.ell:.6g}, spread {100 * law.spread:.1f}%")
        except AnalysisError as e:
            warn(str(e))

        if getattr(parse_result, "compare_limit", False):
            self._compare(records, spec, config, provenance)

        failed = len(alphas) - sum(1 for r in records if r.converged)
        if failed and not config.allow_partial:
            return 1
        return 0

    def _compare(
        self,
        records: typing.Sequence[SweepRecord],
        spec: ProblemSpec,
        config: RunConfig,
        provenance: str,
    ) -> None:
        h2("Comparing with the half-space limit")
        limit = solve_limit_constant(
            config.limit_gamma,
            spec.p,
            spec.n,
            config.limit_box,
            config.limit.resolutions,
            settings=config.solver_settings,
            check_truncation=config.limit.check_truncation,
        )
        comparison = compare_limit(records, limit, spec, unrestricted=config.unrestricted)
        write_table(
            self.output_path(config, "limit_comparison.csv"),
            COMPARISON_HEADER,
            [
                (a, v, comparison.target, comparison.target_gamma, comparison.factor)
                for a, v in zip(comparison.alphas, comparison.normalized)
            ],
            provenance=provenance,
        )
        msg(
            f"normalized quotient {comparison.normalized[-1]:.6g} against "
            f"{comparison.target:.6g} ({100 * comparison.relative_gap:.1f}% apart)"
        )

        converged = [r for r in records if r.converged and r.report is not None]
        profiles = []
        for record in converged:
            try:
                profiles.append(profile_comparison(record, spec, limit))
            except AnalysisError as e:
                warn(f"alpha={record.alpha:g}: {e}")
        write_table(
            self.output_path(config, "profile.csv"),
            PROFILE_HEADER,
            [
                (c.alpha, c.gap, c.limit_height, c.blown_up_height)
                for c in profiles
            ],
            provenance=provenance,
        )
