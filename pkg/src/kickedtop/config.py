"""Experiment configuration: defaults, INI files, command-line overrides.

An INI file holds one section per experiment ([sweep-kappa], [contour],
...), each key overriding that experiment's default.  Command-line flags
override the file.  Everything is validated here so bad input fails as
ConfigError before any numerics run.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, fields

from .errors import ConfigError

__all__ = ["EXPERIMENTS", "ExperimentConfig", "load_config_file", "build_config"]

EXPERIMENTS = ("sweep-kappa", "contour", "kappa-zero", "odd-n", "classical")

STATES = ("z", "y", "-z", "-y")
AXES = ("x", "y", "z")

_COMMON_KEYS = {"out", "threads", "kappa_min", "kappa_max", "kappa_step"}
_QUANTUM_KEYS = _COMMON_KEYS | {"j", "state", "axis", "n"}
ALLOWED_KEYS = {
    "sweep-kappa": _QUANTUM_KEYS | {"T"},
    "contour": _QUANTUM_KEYS | {"t_alpha_max"},
    "kappa-zero": _QUANTUM_KEYS | {"t_alpha_max"},
    "odd-n": _QUANTUM_KEYS | {"T"},
    "classical": _COMMON_KEYS,
}

_EXPERIMENT_DEFAULTS = {
    "contour": {"n": (2,)},
    "kappa-zero": {"n": (1,), "kappa_min": 0.0, "kappa_max": 0.0},
    "odd-n": {"n": (1, 3, 5, 7)},
}

_GRID_DECIMALS = 10


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    j: float = 15.0
    state: str = "z"
    axis: str | None = None
    T: int = 50
    n: tuple[int, ...] = (2, 4, 6, 8)
    kappa_min: float = 0.0
    kappa_max: float = 7.0
    kappa_step: float = 0.1
    t_alpha_max: int = 50
    threads: int = 1
    out: str = "results"

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if not self.j > 0 or round(self.j * 2) != self.j * 2:
            raise ConfigError(f"j must be a positive half-integer, got {self.j!r}")
        if self.state not in STATES:
            raise ConfigError(f"state must be one of {STATES}, got {self.state!r}")
        if self.axis is not None and self.axis not in AXES:
            raise ConfigError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.T < 0:
            raise ConfigError(f"T must be non-negative, got {self.T!r}")
        if not self.n or any(k < 1 for k in self.n):
            raise ConfigError(f"n must be positive integers, got {self.n!r}")
        if self.kappa_step <= 0:
            raise ConfigError(f"kappa_step must be positive, got {self.kappa_step!r}")
        if not 0 <= self.kappa_min <= self.kappa_max:
            raise ConfigError(
                f"need 0 <= kappa_min <= kappa_max, got {self.kappa_min!r}, {self.kappa_max!r}"
            )
        if self.t_alpha_max < 0:
            raise ConfigError(f"t_alpha_max must be non-negative, got {self.t_alpha_max!r}")
        if self.threads < 1:
            raise ConfigError(f"threads must be at least 1, got {self.threads!r}")
        if self.experiment == "kappa-zero":
            if self.kappa_min != 0.0 or self.kappa_max != 0.0:
                raise ConfigError("the kappa-zero experiment runs at kappa0 = 0 only")
            if self.n != (1,):
                raise ConfigError("the kappa-zero experiment uses n = 1 only")
        if self.experiment == "contour" and len(self.n) != 1:
            raise ConfigError(f"contour takes a single n, got {self.n!r}")

    @property
    def measurement_axis(self) -> str:
        """The axis actually measured.  Both measurements use the z component
        unless overridden; only the initial state moves between scenarios."""
        return self.axis if self.axis is not None else "z"

    @property
    def state_axis(self) -> str:
        return self.state.lstrip("-")

    @property
    def state_sign(self) -> int:
        return -1 if self.state.startswith("-") else 1

    def kappa_grid(self) -> tuple[float, ...]:
        """Evenly spaced kick strengths, endpoints included, rounded for stable CSVs."""
        if self.kappa_max == self.kappa_min:
            return (round(self.kappa_min, _GRID_DECIMALS),)
        count = int(round((self.kappa_max - self.kappa_min) / self.kappa_step)) + 1
        grid = tuple(
            round(self.kappa_min + i * self.kappa_step, _GRID_DECIMALS)
            for i in range(count)
        )
        # A step that overshoots the interval still yields at least the endpoint pair.
        return tuple(k for k in grid if k <= self.kappa_max + 10**-_GRID_DECIMALS)


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {raw!r}") from None


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {raw!r}") from None


def _parse_n(raw: str) -> tuple[int, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"n must list at least one integer, got {raw!r}")
    return tuple(_parse_int("n", p) for p in parts)


_PARSERS = {
    "j": lambda raw: _parse_float("j", raw),
    "state": str,
    "axis": str,
    "T": lambda raw: _parse_int("T", raw),
    "n": _parse_n,
    "kappa_min": lambda raw: _parse_float("kappa_min", raw),
    "kappa_max": lambda raw: _parse_float("kappa_max", raw),
    "kappa_step": lambda raw: _parse_float("kappa_step", raw),
    "t_alpha_max": lambda raw: _parse_int("t_alpha_max", raw),
    "threads": lambda raw: _parse_int("threads", raw),
    "out": str,
}


def load_config_file(path: str) -> dict[str, dict[str, str]]:
    """Read an INI file into raw per-experiment key/value maps.

    Key case matters (T is not t), and sections or keys that nothing uses
    are rejected rather than silently ignored.
    """
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep key case: T and t must stay distinct
    try:
        with open(path) as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path!r}: {exc}") from None
    sections: dict[str, dict[str, str]] = {}
    for name in parser.sections():
        if name not in EXPERIMENTS:
            raise ConfigError(
                f"unknown section [{name}] in {path!r}; expected one of {EXPERIMENTS}"
            )
        allowed = ALLOWED_KEYS[name]
        section = dict(parser.items(name))
        for key in section:
            if key not in allowed:
                raise ConfigError(
                    f"unknown key {key!r} in section [{name}]; allowed: {sorted(allowed)}"
                )
        sections[name] = section
    return sections


def build_config(
    experiment: str,
    file_section: dict[str, str] | None = None,
    overrides: dict[str, object] | None = None,
) -> ExperimentConfig:
    """Resolve one experiment's settings: defaults, then file, then overrides."""
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    values: dict[str, object] = dict(_EXPERIMENT_DEFAULTS.get(experiment, {}))
    allowed = ALLOWED_KEYS[experiment]
    for key, raw in (file_section or {}).items():
        if key not in allowed:
            raise ConfigError(f"key {key!r} not valid for experiment {experiment!r}")
        values[key] = _PARSERS[key](raw)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in allowed:
            raise ConfigError(f"option {key!r} not valid for experiment {experiment!r}")
        values[key] = value
    field_names = {f.name for f in fields(ExperimentConfig)}
    assert set(values) <= field_names
    return ExperimentConfig(experiment=experiment, **values)
