# -*- coding: utf-8 -*-
"""Checks that run before any computation starts."""


from .exceptions import PreflightError
from .printer import debug, fail, success

import os
import typing


def preflight_check(
    title: str, func: typing.Callable[[], None], *, ignore_errors: bool = False
) -> None:
    try:
        func()
    except PreflightError:
        fail(f'Preflight Check "{title}" failed', ignore=ignore_errors)
        if not ignore_errors:
            raise
    else:
        success(f'Preflight Check "{title}" passed', verbosity=2)


def output_directory_check(directory: str) -> None:
    """Create `directory` if needed and make sure results can be written."""
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise PreflightError(
            f'Can not create output directory "{directory}".', original_exception=e
        )
    if not os.access(directory, os.W_OK | os.X_OK):
        raise PreflightError(f'Output directory "{directory}" is not writable.')
    debug(f'Writing results to "{directory}".')


def threads_check(threads: int) -> None:
    """The sweep pool needs at least one worker and not absurdly many."""
    available = os.cpu_count() or 1
    if threads < 1:
        raise PreflightError(f"Need at least one thread, got {threads}.")
    if threads > 4 * available:
        raise PreflightError(
            f"{threads} threads requested, but only {available} CPUs are available."
        )
    debug(f"Using {threads} of {available} CPUs.")
