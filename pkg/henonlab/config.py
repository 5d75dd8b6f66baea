# -*- coding: utf-8 -*-
"""Run configuration: a single JSON file per invocation.

Every key is optional except `case`, `dimension` and `p`; the defaults are
listed in docs/config.rst. Errors point at the file, the line of the
offending key and its dotted field path.
"""


from __future__ import annotations

from .exceptions import (
    BadDimension,
    ConfigError,
    ExponentOutOfRange,
    OutputError,
    ValidationError,
)
from .location import Location
from .mesh import BallPolar, HalfSpaceBox, MeridianGrid, Pole, build_grid
from .model import (
    ALPHA_WARNING_THRESHOLD,
    ProblemCase,
    ProblemSpec,
    limit_gamma,
    validate,
)
from .solver import InitialGuess, SolverSettings, default_limit_box

import hashlib
import json
import math
import typing


# Hyperplane minimizers peak at both poles and sharpen with alpha.
HYPERPLANE_SIGMA_GRADING = 1.06


class GridConfig(typing.NamedTuple):
    resolutions: typing.Tuple[int, int] = (256, 128)
    grading: float = 1.03
    sigma_grading: typing.Optional[float] = None  # None: per case
    pole: str = "auto"


class LimitConfig(typing.NamedTuple):
    gamma: typing.Optional[float] = None  # None: the gamma of the case
    box: typing.Optional[typing.Tuple[float, float]] = None  # None: (12, 24) / gamma
    resolutions: typing.Tuple[int, int] = (48, 96)
    check_truncation: bool = True


class ReduceCheckConfig(typing.NamedTuple):
    samples: int = 200
    steps: typing.Tuple[float, ...] = (0.02, 0.01, 0.005)
    floor: float = 1e-3


class RunConfig(typing.NamedTuple):
    """Everything one henonlab invocation needs."""

    case: ProblemCase
    dimension: int
    p: float
    alpha: typing.Optional[float] = None
    alphas: typing.Tuple[float, ...] = ()
    unrestricted: bool = False
    grid: GridConfig = GridConfig()
    limit: LimitConfig = LimitConfig()
    solver: SolverSettings = SolverSettings()
    reduce_check: ReduceCheckConfig = ReduceCheckConfig()
    output: str = "."
    seed: int = 0
    threads: int = 1
    allow_partial: bool = False

    @staticmethod
    def load(path: str) -> RunConfig:
        try:
            with open(path, "r", encoding="utf-8") as source:
                text = source.read()
        except OSError as e:
            raise OutputError(
                f"Could not read config: {e}",
                location=Location(file_name=path),
                original_exception=e,
            )
        return RunConfig.from_json(text, file_name=path)

    @staticmethod
    def from_json(text: str, *, file_name: typing.Optional[str] = None) -> RunConfig:
        return _Reader(text, file_name).read()

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        return {
            "case": self.case.value,
            "dimension": self.dimension,
            "p": self.p,
            "alpha": self.alpha,
            "alphas": list(self.alphas),
            "unrestricted": self.unrestricted,
            "grid": {
                "resolutions": list(self.grid.resolutions),
                "grading": self.grid.grading,
                "sigma_grading": self.grid.sigma_grading,
                "pole": self.grid.pole,
            },
            "limit": {
                "gamma": self.limit.gamma,
                "box": None if self.limit.box is None else list(self.limit.box),
                "resolutions": list(self.limit.resolutions),
                "check_truncation": self.limit.check_truncation,
            },
            "solver": {
                "tol": self.solver.tol,
                "max_iter": self.solver.max_iter,
                "contraction": self.solver.contraction,
                "armijo": self.solver.armijo,
                "max_backtracks": self.solver.max_backtracks,
                "poisson": self.solver.poisson,
                "poisson_tol": self.solver.poisson_tol,
                "starts": [s.value for s in self.solver.starts],
            },
            "reduce_check": {
                "samples": self.reduce_check.samples,
                "steps": list(self.reduce_check.steps),
                "floor": self.reduce_check.floor,
            },
            "output": self.output,
            "seed": self.seed,
            "threads": self.threads,
            "allow_partial": self.allow_partial,
        }

    def to_json(self) -> str:
        """Canonical form: sorted keys, two space indent, trailing newline."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @property
    def config_hash(self) -> str:
        """Hash of the canonical form, without the output directory.

        Identical runs written to different places share a hash.
        """
        data = self.to_dict()
        del data["output"]
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    @property
    def solver_settings(self) -> SolverSettings:
        return self.solver._replace(seed=self.seed)

    @property
    def all_alphas(self) -> typing.Tuple[float, ...]:
        single = () if self.alpha is None else (self.alpha,)
        return single + tuple(a for a in self.alphas if a != self.alpha)

    def spec(self, alpha: typing.Optional[float] = None) -> ProblemSpec:
        if alpha is None:
            alpha = self.alpha
        if alpha is None:
            raise ConfigError("No alpha configured.", location=Location(field="alpha"))
        return ProblemSpec.create(self.case, self.dimension, self.p, alpha)

    @property
    def template(self) -> ProblemSpec:
        """The spec with the first configured alpha."""
        alphas = self.all_alphas
        return self.spec(alphas[0] if alphas else 4.0)

    @property
    def pole(self) -> Pole:
        if self.grid.pole != "auto":
            return Pole(self.grid.pole)
        return {
            ProblemCase.FULL_HENON: Pole.NORTH,
            ProblemCase.PARTIAL_HENON: Pole.SOUTH,
            ProblemCase.HYPERPLANE: Pole.BOTH,
        }[self.case]

    @property
    def limit_gamma(self) -> float:
        return self.limit.gamma if self.limit.gamma is not None else limit_gamma(self.case)

    @property
    def n(self) -> int:
        return self.dimension + 1 if self.case.is_reduced else self.dimension

    @property
    def sigma_grading(self) -> float:
        """The configured sigma grading, by default graded only for even problems."""
        if self.grid.sigma_grading is not None:
            return self.grid.sigma_grading
        if self.case is ProblemCase.HYPERPLANE and not self.unrestricted:
            return HYPERPLANE_SIGMA_GRADING
        return 1.0

    def build_grid(self) -> MeridianGrid:
        pole = self.pole
        if self.case is ProblemCase.HYPERPLANE and not self.unrestricted:
            pole = Pole.BOTH
        return build_grid(
            BallPolar(1.0),
            self.n,
            self.grid.resolutions,
            self.grid.grading,
            sigma_grading=self.sigma_grading,
            pole=pole,
        )

    @property
    def limit_box(self) -> HalfSpaceBox:
        if self.limit.box is None:
            return default_limit_box(self.limit_gamma)
        return HalfSpaceBox(*self.limit.box)

    def with_overrides(
        self,
        *,
        output: typing.Optional[str] = None,
        seed: typing.Optional[int] = None,
        threads: typing.Optional[int] = None,
        allow_partial: typing.Optional[bool] = None,
    ) -> RunConfig:
        """Apply command line flags."""
        changes: typing.Dict[str, typing.Any] = {}
        if output is not None:
            changes["output"] = output
        if seed is not None:
            if seed < 0:
                raise ConfigError(
                    f"Seed {seed} must be nonnegative.", location=Location(field="seed")
                )
            changes["seed"] = seed
        if threads is not None:
            changes["threads"] = threads
        if allow_partial:
            changes["allow_partial"] = True
        return self._replace(**changes)


# Reading:


_Object = typing.Dict[str, typing.Any]
T = typing.TypeVar("T")


class _Reader:
    """Turns JSON text into a RunConfig, tracking where every key came from."""

    def __init__(self, text: str, file_name: typing.Optional[str]) -> None:
        self._text = text
        self._lines = text.splitlines()
        self._file_name = file_name

    def _location(self, path: str, line: typing.Optional[int] = None) -> Location:
        if self._file_name is None:
            return Location(field=path or None)
        return Location(file_name=self._file_name, line_number=line, field=path or None)

    def _line_of(self, key: str, start: int) -> typing.Optional[int]:
        needle = f'"{key}"'
        for number in range(max(start, 1), len(self._lines) + 1):
            if needle in self._lines[number - 1]:
                return number
        return None

    def _error(self, message: str, path: str, line: typing.Optional[int]) -> ConfigError:
        return ConfigError(message, location=self._location(path, line))

    def read(self) -> RunConfig:
        try:
            data = json.loads(self._text)
        except json.JSONDecodeError as e:
            raise ConfigError(
                f"Malformed JSON: {e.msg}.",
                location=self._location("", e.lineno if self._file_name else None),
                original_exception=e,
            )
        if not isinstance(data, dict):
            raise self._error("Top level must be an object.", "", None)

        section = _Section(self, data, "", 1)
        case_name = section.get("case", str, required=True)
        try:
            case = ProblemCase(case_name)
        except ValueError:
            raise section.error(
                "case",
                f'Unknown case "{case_name}", use one of '
                + ", ".join(c.value for c in ProblemCase)
                + ".",
            )

        config = RunConfig(
            case=case,
            dimension=section.get("dimension", int, required=True),
            p=section.get("p", float, required=True),
            alpha=section.get("alpha", float, optional=True),
            alphas=tuple(section.get_list("alphas", float, default=[])),
            unrestricted=section.get("unrestricted", bool, default=False),
            grid=self._grid(section.child("grid")),
            limit=self._limit(section.child("limit")),
            solver=self._solver(section.child("solver")),
            reduce_check=self._reduce_check(section.child("reduce_check")),
            output=section.get("output", str, default="."),
            seed=section.get("seed", int, default=0),
            threads=section.get("threads", int, default=1),
            allow_partial=section.get("allow_partial", bool, default=False),
        )
        section.finish()

        if config.seed < 0:
            raise section.error("seed", "Seed must be nonnegative.")
        if config.threads < 1:
            raise section.error("threads", "Need at least one thread.")
        for alpha in config.all_alphas or (ALPHA_WARNING_THRESHOLD + 1.0,):
            result = validate(config.spec(alpha))
            for e in result.errors:
                e.set_location(section.location_of(_validation_field(e)))
            result.raise_for_errors()
        return config

    def _grid(self, section: _Section) -> GridConfig:
        defaults = GridConfig()
        resolutions = section.get_list("resolutions", int, default=list(defaults.resolutions))
        if len(resolutions) != 2:
            raise section.error("resolutions", "Need two node counts [n_rho, n_sigma].")
        pole = section.get("pole", str, default=defaults.pole)
        if pole not in ("auto", *(p.value for p in Pole)):
            raise section.error("pole", f'Unknown pole "{pole}".')
        grid = GridConfig(
            (resolutions[0], resolutions[1]),
            section.get("grading", float, default=defaults.grading),
            section.get("sigma_grading", float, default=None, optional=True),
            pole,
        )
        section.finish()
        return grid

    def _limit(self, section: _Section) -> LimitConfig:
        defaults = LimitConfig()
        box = section.get_optional_list("box", float)
        if box is not None and len(box) != 2:
            raise section.error("box", "Need two extents [s_max, t_max].")
        resolutions = section.get_list("resolutions", int, default=list(defaults.resolutions))
        if len(resolutions) != 2:
            raise section.error("resolutions", "Need two node counts [n_s, n_t].")
        gamma = section.get("gamma", float, optional=True)
        if gamma is not None and not gamma > 0.0:
            raise section.error("gamma", "gamma must be positive.")
        limit = LimitConfig(
            gamma,
            None if box is None else (box[0], box[1]),
            (resolutions[0], resolutions[1]),
            section.get("check_truncation", bool, default=defaults.check_truncation),
        )
        section.finish()
        return limit

    def _solver(self, section: _Section) -> SolverSettings:
        defaults = SolverSettings()
        names = section.get_list("starts", str, default=[s.value for s in defaults.starts])
        try:
            starts = tuple(InitialGuess(name) for name in names)
        except ValueError:
            raise section.error("starts", f"Unknown start in {names}.")
        poisson = section.get("poisson", str, default=defaults.poisson)
        if poisson not in ("cg", "direct"):
            raise section.error("poisson", f'Unknown Poisson solver "{poisson}".')
        settings = SolverSettings(
            tol=section.get("tol", float, default=defaults.tol),
            max_iter=section.get("max_iter", int, default=defaults.max_iter),
            contraction=section.get("contraction", float, default=defaults.contraction),
            armijo=section.get("armijo", float, default=defaults.armijo),
            max_backtracks=section.get(
                "max_backtracks", int, default=defaults.max_backtracks
            ),
            poisson=poisson,
            poisson_tol=section.get("poisson_tol", float, default=defaults.poisson_tol),
            starts=starts,
        )
        section.finish()
        if not settings.tol > 0.0:
            raise section.error("tol", "Tolerance must be positive.")
        if settings.max_iter < 1:
            raise section.error("max_iter", "Need at least one iteration.")
        if not 0.0 < settings.contraction < 1.0:
            raise section.error("contraction", "Contraction must lie in (0, 1).")
        if not 0.0 < settings.armijo < 1.0:
            raise section.error("armijo", "Armijo constant must lie in (0, 1).")
        return settings

    def _reduce_check(self, section: _Section) -> ReduceCheckConfig:
        defaults = ReduceCheckConfig()
        check = ReduceCheckConfig(
            section.get("samples", int, default=defaults.samples),
            tuple(section.get_list("steps", float, default=list(defaults.steps))),
            section.get("floor", float, default=defaults.floor),
        )
        section.finish()
        if check.samples < 1 or len(check.steps) < 2:
            raise section.error("steps", "Need samples and at least two steps.")
        return check


def _validation_field(error: ValidationError) -> str:
    if isinstance(error, BadDimension):
        return "dimension"
    if isinstance(error, ExponentOutOfRange):
        return "p"
    return "alpha"


class _Section:
    """One JSON object and the keys read from it."""

    def __init__(self, reader: _Reader, data: _Object, path: str, line: int) -> None:
        self._reader = reader
        self._data = data
        self._path = path
        self._line = line
        self._seen: typing.Set[str] = set()

    def _field(self, key: str) -> str:
        return f"{self._path}.{key}" if self._path else key

    def location_of(self, key: str) -> Location:
        return self._reader._location(
            self._field(key), self._reader._line_of(key, self._line)
        )

    def error(self, key: str, message: str) -> ConfigError:
        return ConfigError(message, location=self.location_of(key))

    def child(self, key: str) -> _Section:
        self._seen.add(key)
        value = self._data.get(key, {})
        if not isinstance(value, dict):
            raise self.error(key, "Expected an object.")
        line = self._reader._line_of(key, self._line) or self._line
        return _Section(self._reader, value, self._field(key), line)

    def _convert(self, key: str, value: typing.Any, kind: typing.Type[T]) -> T:
        if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
            if not math.isfinite(value):
                raise self.error(key, "Expected a finite number.")
            return typing.cast(T, float(value))
        if kind is int and isinstance(value, int) and not isinstance(value, bool):
            return typing.cast(T, value)
        if kind in (str, bool) and isinstance(value, kind):
            return typing.cast(T, value)
        raise self.error(key, f"Expected {kind.__name__}, got {json.dumps(value)}.")

    def get(
        self,
        key: str,
        kind: typing.Type[T],
        *,
        default: typing.Any = None,
        required: bool = False,
        optional: bool = False,
    ) -> typing.Any:
        self._seen.add(key)
        if key not in self._data:
            if required:
                raise self.error(key, "Missing required key.")
            return default
        value = self._data[key]
        if value is None and optional:
            return None
        return self._convert(key, value, kind)

    def get_list(
        self, key: str, kind: typing.Type[T], *, default: typing.List[T]
    ) -> typing.List[T]:
        self._seen.add(key)
        if key not in self._data:
            return default
        value = self._data[key]
        if not isinstance(value, list):
            raise self.error(key, "Expected a list.")
        return [self._convert(key, v, kind) for v in value]

    def get_optional_list(
        self, key: str, kind: typing.Type[T]
    ) -> typing.Optional[typing.List[T]]:
        """A list, or None when the key is missing or null."""
        self._seen.add(key)
        if self._data.get(key) is None:
            return None
        return self.get_list(key, kind, default=[])

    def finish(self) -> None:
        """Reject keys nobody asked for."""
        unknown = sorted(set(self._data) - self._seen)
        if unknown:
            raise self.error(unknown[0], f'Unknown key "{unknown[0]}".')
