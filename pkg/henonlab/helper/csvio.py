# -*- coding: utf-8 -*-
"""Deterministic CSV tables with a provenance comment line."""


from ..exceptions import OutputError
from ..location import Location
from ..printer import trace

import csv
import math
import os
import typing


Cell = typing.Union[str, int, float, bool]


def format_cell(value: Cell) -> str:
    """Render a cell so that writing the same data twice gives the same bytes."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def provenance_line(version: str, config_hash: str) -> str:
    return f"henonlab {version} config-sha256={config_hash}"


def write_table(
    path: str,
    header: typing.Sequence[str],
    rows: typing.Iterable[typing.Sequence[Cell]],
    *,
    provenance: typing.Optional[str] = None,
) -> None:
    """Write `rows` below a `# provenance` line and the header line."""
    trace(f'Writing table "{path}".')
    try:
        with open(path, "w", newline="", encoding="utf-8") as out:
            if provenance:
                out.write(f"# {provenance}\n")
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_cell(c) for c in row])
    except OSError as e:
        raise OutputError(
            f"Could not write table: {e}",
            location=Location(file_name=path),
            original_exception=e,
        )


def write_columns(
    path: str,
    columns: typing.Sequence[typing.Sequence[float]],
    *,
    provenance: typing.Optional[str] = None,
) -> None:
    """Whitespace separated plot data, one point per line."""
    try:
        with open(path, "w", encoding="utf-8") as out:
            if provenance:
                out.write(f"# {provenance}\n")
            for values in zip(*columns):
                out.write(" ".join(format_cell(float(v)) for v in values) + "\n")
    except OSError as e:
        raise OutputError(
            f"Could not write plot data: {e}",
            location=Location(file_name=path),
            original_exception=e,
        )


def read_table(path: str) -> typing.Tuple[typing.List[str], typing.List[typing.List[str]]]:
    """Header and rows of a table, comment lines skipped."""
    if not os.path.isfile(path):
        raise OutputError("No such file.", location=Location(file_name=path))
    try:
        with open(path, "r", newline="", encoding="utf-8") as source:
            rows = [
                row
                for row in csv.reader(
                    line for line in source if not line.startswith("#")
                )
                if row
            ]
    except OSError as e:
        raise OutputError(
            f"Could not read table: {e}",
            location=Location(file_name=path),
            original_exception=e,
        )
    if not rows:
        raise OutputError("Table has no header.", location=Location(file_name=path))
    return rows[0], rows[1:]
