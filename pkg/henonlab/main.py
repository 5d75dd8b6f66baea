#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""The henonlab executable."""


from .config import RunConfig
from .exceptions import HenonLabError
from .preflight import output_directory_check, preflight_check, threads_check
from .printer import Printer, debug, error, fail, trace
from .subcommands.fitsubcommand import FitSubcommand
from .subcommands.limitsubcommand import LimitSubcommand
from .subcommands.reducechecksubcommand import ReduceCheckSubcommand
from .subcommands.solvesubcommand import SolveSubcommand
from .subcommands.subcommand import Subcommand
from .subcommands.sweepsubcommand import SweepSubcommand

from argparse import ArgumentParser
import os
import sys
import traceback
import typing


# Helper code:


def _parse_commandline(
    *args: str, subcommands: typing.List[Subcommand]
) -> typing.Any:
    """Parse the command line options."""
    parser = ArgumentParser(
        description="Least energy solutions of Henon type equations", prog=args[0]
    )

    parser.add_argument("--verbose", action="count", default=0, help="Be verbose")
    parser.add_argument(
        "--config",
        dest="config",
        type=str,
        action="store",
        required=True,
        help="The JSON run configuration.",
    )
    parser.add_argument(
        "--out",
        dest="out",
        type=str,
        default=None,
        help="Output directory (overrides the config).",
    )
    parser.add_argument(
        "--seed",
        dest="seed",
        type=int,
        default=None,
        help="Random seed (overrides the config).",
    )
    parser.add_argument(
        "--threads",
        dest="threads",
        type=int,
        default=None,
        help="Sweep entries solved in parallel (overrides the config).",
    )
    parser.add_argument(
        "--allow-partial",
        dest="allow_partial",
        action="store_true",
        help="Report unconverged solves instead of failing.",
    )

    subparsers = parser.add_subparsers(
        help="What to compute", dest="subcommand", required=True
    )
    for sc in subcommands:
        debug(f'Setting up subparser for "{sc.name}" with help "{sc.help_string}".')
        sc.setup_subparser(subparsers.add_parser(sc.name, help=sc.help_string))

    return parser.parse_args(args[1:])


def _report_error(exception: HenonLabError) -> None:
    if exception.exit_code == 1:
        fail(f"Computation failed: {exception}")
        error("Error report:")
        Printer.instance().flush()
        if exception.original_exception is not None:
            traceback.print_tb(exception.original_exception.__traceback__)
    else:
        error(str(exception))


# Main section:


def main(*command_args: str) -> int:
    known_subcommands: typing.List[Subcommand] = [
        SolveSubcommand(),
        SweepSubcommand(),
        LimitSubcommand(),
        ReduceCheckSubcommand(),
        FitSubcommand(),
    ]

    parse_result = _parse_commandline(*command_args, subcommands=known_subcommands)

    # Set up printing:
    pr = Printer.instance()
    pr.set_verbosity(parse_result.verbose)
    pr.show_verbosity_level()

    trace(f"Arguments parsed from command line: {parse_result}.")

    subcommand = next(x for x in known_subcommands if x.name == parse_result.subcommand)
    assert subcommand
    debug(f"Subcommand {subcommand.name} found.")

    try:
        config = RunConfig.load(parse_result.config).with_overrides(
            output=parse_result.out,
            seed=parse_result.seed,
            threads=parse_result.threads,
            allow_partial=parse_result.allow_partial,
        )
        trace(f"Configuration hash {config.config_hash}.")

        preflight_check(
            "output directory", lambda: output_directory_check(config.output)
        )
        preflight_check("threads", lambda: threads_check(config.threads))

        return subcommand(parse_result=parse_result, config=config)
    except HenonLabError as e:
        _report_error(e)
        return e.exit_code


def run() -> int:
    current_directory = os.getcwd()

    try:
        result = main(*sys.argv)
    finally:
        os.chdir(current_directory)

    return result


if __name__ == "__main__":
    sys.exit(run())
