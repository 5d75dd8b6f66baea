# -*- coding: utf-8 -*-
"""fit: recompute the scaling fits from an existing sweep table."""


from .subcommand import Subcommand
from .sweepsubcommand import scaling_fits
from ..asymptotics import read_sweep_csv, write_fits_csv
from ..config import RunConfig
from ..exceptions import InsufficientData
from ..printer import h2

import typing


class FitSubcommand(Subcommand):
    def __init__(self) -> None:
        super().__init__("fit", help_string="Fit the scaling laws of a sweep table.")

    def setup_subparser(self, subparser: typing.Any) -> None:
        subparser.add_argument(
            "--sweep",
            dest="sweep",
            type=str,
            default=None,
            help="Sweep table to read (default: sweep.csv in the output directory).",
        )

    def __call__(self, *, parse_result: typing.Any, config: RunConfig) -> int:
        path = getattr(parse_result, "sweep", None) or self.output_path(
            config, "sweep.csv"
        )
        h2(f'Fitting "{path}"')
        records = read_sweep_csv(path)
        fits = scaling_fits(records, config.template)
        if not fits:
            raise InsufficientData(f'No fit possible from "{path}".')
        write_fits_csv(
            fits, self.output_path(config, "fits.csv"), provenance=self.provenance(config)
        )
        return 0
