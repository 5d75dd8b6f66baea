#!/usr/bin/python
"""Test for the console output of henonlab."""


import pytest  # type: ignore

from io import StringIO
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import henonlab.printer as printer_module
from henonlab.printer import Level, Printer
from henonlab.solver import InitialGuess, QuotientProblem, minimize_quotient


@pytest.fixture()
def stream():
    return StringIO()


@pytest.fixture()
def printer(stream):
    """A shared printer writing into `stream`, dropped after the test."""
    result = Printer(verbosity=0, stream=stream)
    yield result
    Printer._instance = None


def test_printer_defaults_to_stderr() -> None:
    try:
        assert Printer()._stream is sys.stderr
    finally:
        Printer._instance = None


def test_new_printer_is_shared(printer) -> None:
    assert Printer.instance() is printer


def test_instance_reads_environment(monkeypatch) -> None:
    monkeypatch.setenv("HENONLAB_LOG_VERBOSITY", "3")
    Printer._instance = None
    try:
        assert Printer.instance().verbosity == 3
    finally:
        Printer._instance = None


@pytest.mark.parametrize(
    ("helper", "level", "intro"),
    [
        pytest.param(printer_module.msg, Level.MSG, "", id="msg"),
        pytest.param(printer_module.verbose, Level.VERBOSE, "", id="verbose"),
        pytest.param(printer_module.info, Level.INFO, "......", id="info"),
        pytest.param(printer_module.debug, Level.DEBUG, "------", id="debug"),
        pytest.param(printer_module.trace, Level.TRACE, "++++++", id="trace"),
        pytest.param(printer_module.warn, Level.MSG, "warn:", id="warn"),
        pytest.param(printer_module.error, Level.MSG, "ERROR:", id="error"),
    ],
)
@pytest.mark.parametrize("verbosity", [0, 2, 4])
def test_helpers_follow_verbosity(printer, stream, helper, level, intro, verbosity) -> None:
    printer.set_verbosity(verbosity)
    helper("alpha=40 solved")
    text = stream.getvalue()
    if level <= verbosity:
        assert "alpha=40 solved" in text
        assert intro in text
    else:
        assert text == ""


def test_message_verbosity_argument(printer, stream) -> None:
    printer_module.success("check passed", verbosity=2)
    assert stream.getvalue() == ""
    printer.set_verbosity(2)
    printer_module.success("check passed", verbosity=2)
    assert "OK" in stream.getvalue()


def test_h2_starts_a_block(printer, stream) -> None:
    printer_module.h2("Sweep of 3 alphas")
    lines = stream.getvalue().splitlines()
    assert lines[0] == ""
    assert lines[1] == "****** Sweep of 3 alphas"


def test_fail_does_not_exit(printer, stream) -> None:
    printer_module.fail("residual 1e-3")
    printer_module.fail("threads", ignore=True)
    lines = stream.getvalue().splitlines()
    assert lines == [" FAIL  residual 1e-3", " fail  threads (ignored)"]


def test_indent_when_verbose(printer, stream) -> None:
    printer.set_verbosity(1)
    printer_module.msg("quotient 12.5")
    assert stream.getvalue() == "      quotient 12.5\n"


def test_no_color_on_plain_streams(printer, stream) -> None:
    printer_module.warn("spread 3%")
    assert "\033[" not in stream.getvalue()


def test_verbosity_banner(printer, stream) -> None:
    printer.set_verbosity(2)
    printer.show_verbosity_level()
    text = stream.getvalue()
    assert "Info output enabled." in text
    assert "Debug output enabled." not in text


def test_flush_replays_hidden_output(printer, stream) -> None:
    printer_module.debug("Poisson solver factorized")
    assert stream.getvalue() == ""
    assert printer.recent == ["------ Poisson solver factorized"]

    printer.flush()
    lines = stream.getvalue().splitlines()
    assert lines == [
        ">>>>>> Recent output:",
        "------ Poisson solver factorized",
        ">>>>>> End of recent output <<<<<<",
    ]
    assert printer.recent == []

    printer.flush()
    assert stream.getvalue().splitlines()[-1] == ">>>>>> No recent output <<<<<<"


def test_buffer_is_bounded(stream) -> None:
    try:
        printer = Printer(stream=stream, buffer_lines=3)
        for k in range(5):
            printer_module.trace(f"line {k}")
        assert printer.recent == ["++++++ line 2", "++++++ line 3", "++++++ line 4"]
    finally:
        Printer._instance = None


def test_iteration_only_at_trace(printer, stream) -> None:
    printer.set_verbosity(3)
    printer_module.iteration("bump", 1, quotient=2.5)
    assert stream.getvalue() == ""
    assert printer.recent == []

    printer.set_verbosity(4)
    printer_module.iteration("bump", 7, quotient=2.5, residual=1e-3, step=0.25)
    assert stream.getvalue() == "++++++ bump #7 quotient=2.5 residual=0.001 step=0.25\n"


def test_solver_steps_are_traced(printer, stream, small_ball, partial_spec, fast_settings) -> None:
    printer.set_verbosity(4)
    problem = QuotientProblem.for_spec(partial_spec, small_ball)
    report = minimize_quotient(
        problem,
        InitialGuess.BUMP,
        settings=fast_settings._replace(max_iter=3),
        allow_partial=True,
    )
    assert report.iterations >= 1
    lines = [line for line in stream.getvalue().splitlines() if " #" in line]
    assert lines[0].startswith("++++++ bump #1 quotient=")
    assert "step=" in lines[0]
