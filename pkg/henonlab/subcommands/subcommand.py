# -*- coding: utf-8 -*-
"""Subcommand base class."""


from .. import __version__
from ..config import RunConfig
from ..helper.csvio import provenance_line
from ..printer import trace

import os
import typing


class Subcommand:
    def __init__(self, name: str, help_string: str) -> None:
        self._name = name
        self._help_string = help_string

    def __call__(self, *, parse_result: typing.Any, config: RunConfig) -> int:
        assert False

    def setup_subparser(self, subparser: typing.Any) -> None:
        pass

    @property
    def help_string(self) -> str:
        return self._help_string

    @property
    def name(self) -> str:
        return self._name

    @staticmethod
    def provenance(config: RunConfig) -> str:
        return provenance_line(__version__, config.config_hash)

    @staticmethod
    def output_path(config: RunConfig, file_name: str) -> str:
        path = os.path.join(config.output, file_name)
        trace(f'Output file "{path}".')
        return path
