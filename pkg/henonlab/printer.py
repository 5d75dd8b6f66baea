# -*- coding: utf-8 -*-
"""Console output of henonlab.

All log text goes to stderr (or the stream a Printer is given); result
files and stdout stay clean. Every line is also kept in a bounded buffer so
an error report can replay what led up to a failure.
"""


from collections import deque
from enum import IntEnum
from io import StringIO
from os import getenv
import sys
import typing


class Level(IntEnum):
    """Verbosity a message needs before it is shown."""

    MSG = 0
    VERBOSE = 1
    INFO = 2
    DEBUG = 3
    TRACE = 4


# (ANSI color of the intro, intro text) per kind of line.
_INTROS: typing.Dict[str, typing.Tuple[str, str]] = {
    "h2": ("\033[1;31m", "******"),
    "error": ("\033[1;31m", "ERROR:"),
    "warn": ("\033[1;33m", "warn: "),
    "success": ("\033[1;7;32m", "  OK  "),
    "fail": ("\033[1;7;31m", " FAIL "),
    "ignored": ("\033[1;33m", " fail "),
    "info": ("\033[1;36m", "......"),
    "debug": ("\033[1;36m", "------"),
    "trace": ("\033[1;36m", "++++++"),
}
_RESET = "\033[0m"


def h2(*args: str, **kwargs: typing.Any) -> None:
    """Print a headline."""
    Printer.instance().h2(*args, **kwargs)


def error(*args: str, **kwargs: typing.Any) -> None:
    Printer.instance().error(*args, **kwargs)


def warn(*args: str, **kwargs: typing.Any) -> None:
    Printer.instance().warn(*args, **kwargs)


def success(*args: str, **kwargs: typing.Any) -> None:
    Printer.instance().success(*args, **kwargs)


def fail(*args: str, **kwargs: typing.Any) -> None:
    """Report a failed check; the caller decides whether to go on."""
    Printer.instance().fail(*args, **kwargs)


def msg(*args: str) -> None:
    Printer.instance().msg(*args)


def verbose(*args: str) -> None:
    Printer.instance().verbose(*args)


def info(*args: str) -> None:
    Printer.instance().info(*args)


def debug(*args: str) -> None:
    Printer.instance().debug(*args)


def trace(*args: str) -> None:
    Printer.instance().trace(*args)


def iteration(label: str, count: int, **values: float) -> None:
    """Trace one step of an iterative method."""
    Printer.instance().iteration(label, count, **values)


class Printer:
    """Verbosity filtered output with a replay buffer.

    The henonlab executable sets up the verbosity of the shared instance;
    library code only uses the module level helpers. Without an executable
    the verbosity comes from HENONLAB_LOG_VERBOSITY.
    """

    _instance: typing.Optional["Printer"] = None

    @staticmethod
    def instance() -> "Printer":
        if Printer._instance is None:
            Printer(verbosity=int(getenv("HENONLAB_LOG_VERBOSITY", 0)))
        assert Printer._instance is not None
        return Printer._instance

    def __init__(
        self,
        verbosity: int = 0,
        *,
        stream: typing.Optional[typing.TextIO] = None,
        buffer_lines: int = 200,
    ) -> None:
        """Constructor, the new printer becomes the shared instance."""
        self._stream = stream if stream is not None else sys.stderr
        isatty = getattr(self._stream, "isatty", None)
        self._colored = bool(isatty is not None and isatty())
        self._buffer: typing.Deque[str] = deque(maxlen=buffer_lines)
        self._verbosity = 0
        self.set_verbosity(verbosity)

        Printer._instance = self

    @property
    def verbosity(self) -> int:
        return self._verbosity

    def set_verbosity(self, verbosity: int) -> None:
        self._verbosity = verbosity

    def shows(self, level: int) -> bool:
        """Whether a message of `level` reaches the stream."""
        return level <= self._verbosity

    def show_verbosity_level(self) -> None:
        for name, level in (
            ("Verbose", Level.VERBOSE),
            ("Info", Level.INFO),
            ("Debug", Level.DEBUG),
            ("Trace", Level.TRACE),
        ):
            self._line(f"{name} output enabled.", level=level)

    @property
    def recent(self) -> typing.List[str]:
        """The remembered lines, oldest first."""
        return list(self._buffer)

    def flush(self) -> None:
        """Replay the remembered lines, then forget them."""
        lines = self.recent
        self._buffer.clear()
        if not lines:
            self._write(">>>>>> No recent output <<<<<<")
            return
        self._write(">>>>>> Recent output:")
        for line in lines:
            self._write(line)
        self._write(">>>>>> End of recent output <<<<<<")

    def _write(self, text: str) -> None:
        print(text, file=self._stream)

    def _decorate(self, kind: str, text: str) -> str:
        color, intro = _INTROS[kind]
        if self._colored:
            return f"{color}{intro}{_RESET} {text}"
        return f"{intro} {text}"

    def _line(self, *args: str, level: int, kind: typing.Optional[str] = None) -> None:
        buf = StringIO()
        print(*args, file=buf, end="")
        text = buf.getvalue()
        if kind is not None:
            text = self._decorate(kind, text)
        elif self._verbosity > 0:
            text = "      " + text
        self._buffer.append(text)
        if self.shows(level):
            self._write(text)

    def h2(self, *args: str, verbosity: int = Level.MSG) -> None:
        self._line("", level=verbosity)
        self._line(*args, level=verbosity, kind="h2")

    def error(self, *args: str, verbosity: int = Level.MSG) -> None:
        self._line(*args, level=verbosity, kind="error")

    def warn(self, *args: str, verbosity: int = Level.MSG) -> None:
        self._line(*args, level=verbosity, kind="warn")

    def success(self, *args: str, verbosity: int = Level.MSG) -> None:
        self._line(*args, level=verbosity, kind="success")

    def fail(self, *args: str, verbosity: int = Level.MSG, ignore: bool = False) -> None:
        if ignore:
            self._line(*args, "(ignored)", level=verbosity, kind="ignored")
        else:
            self._line(*args, level=verbosity, kind="fail")

    def msg(self, *args: str) -> None:
        self._line(*args, level=Level.MSG)

    def verbose(self, *args: str) -> None:
        self._line(*args, level=Level.VERBOSE)

    def info(self, *args: str) -> None:
        self._line(*args, level=Level.INFO, kind="info")

    def debug(self, *args: str) -> None:
        self._line(*args, level=Level.DEBUG, kind="debug")

    def trace(self, *args: str) -> None:
        self._line(*args, level=Level.TRACE, kind="trace")

    def iteration(self, label: str, count: int, **values: float) -> None:
        """`label #count key=value ...` at trace level.

        Solvers call this every step, so nothing is formatted or remembered
        unless trace output is on.
        """
        if not self.shows(Level.TRACE):
            return
        fields = " ".join(f"{k}={v:.10g}" for k, v in values.items())
        self.trace(f"{label} #{count} {fields}")
