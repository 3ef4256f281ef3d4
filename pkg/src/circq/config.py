"""Run configuration files.

A config is a small TOML document::

    [metric]
    A = "3 + 0.2*sin(X1+X2+X3+X4)"
    B = "1"
    C = "2"

    [run]
    points = [[0.1, 0.2, 0.3, 0.4], [0.0, 0.0, 0.0, 0.0]]
    seed = 7
    suites = ["validate", "curvature", "frames", "identities", "theorems"]
    samples = 3

    [tolerances]
    master = 1e-10
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .expr import ParseError
from .metric import MetricField

__all__ = ["SUITES", "DEFAULT_TOLERANCES", "ConfigError", "RunConfig", "load_config",
           "parse_config"]

SUITES = ("validate", "curvature", "frames", "identities", "theorems")

DEFAULT_TOLERANCES = {
    "eigenvalues": 1e-10,
    "inverse": 1e-12,
    "isometry": 1e-13,
    "symmetry": 1e-7,
    "flat": 1e-12,
    "frame": 1e-10,
    "angle_chain": 1e-12,
    "invariance": 1e-9,
    "dop": 1e-12,
    "kcoeffs": 1e-12,
    "master": 1e-10,
    "thm4": 1e-9,
    "thm5": 1e-9,
    "thm6": 1e-9,
    "thm7": 1e-10,
    "thm7_components": 1e-12,
    "collapse": 1e-10,
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    A: str
    B: str
    C: str
    points: list
    seed: int = 0
    suites: tuple = SUITES
    samples: int = 3
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def metric_field(self) -> MetricField:
        return MetricField.from_strings(self.A, self.B, self.C)

    def echo(self) -> dict:
        return {
            "metric": {"A": self.A, "B": self.B, "C": self.C},
            "points": [list(map(float, p)) for p in self.points],
            "samples": self.samples,
            "seed": self.seed,
            "suites": list(self.suites),
            "tolerances": dict(sorted(self.tolerances.items())),
        }


def _expect(cond, message):
    if not cond:
        raise ConfigError(message)


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    unknown = set(data) - {"metric", "run", "tolerances"}
    _expect(not unknown, f"{source}: unknown section(s) {sorted(unknown)}")

    metric = data.get("metric", {})
    for key in "ABC":
        _expect(isinstance(metric.get(key), str),
                f"{source}: [metric] needs a quoted string for {key}")
    try:
        MetricField.from_strings(metric["A"], metric["B"], metric["C"])
    except ParseError as exc:
        raise ConfigError(f"{source}: bad metric expression: {exc}") from None

    run = data.get("run", {})
    points = run.get("points")
    _expect(isinstance(points, list) and points, f"{source}: [run] needs at least one point")
    for p in points:
        _expect(isinstance(p, list) and len(p) == 4
                and all(isinstance(t, (int, float)) and not isinstance(t, bool)
                        and math.isfinite(t) for t in p),
                f"{source}: each point must be a list of 4 finite numbers, got {p!r}")
    seed = run.get("seed", 0)
    _expect(isinstance(seed, int) and not isinstance(seed, bool) and seed >= 0,
            f"{source}: seed must be a non-negative integer")
    suites = run.get("suites", list(SUITES))
    _expect(isinstance(suites, list) and all(s in SUITES for s in suites),
            f"{source}: suites must be a subset of {list(SUITES)}")
    samples = run.get("samples", 3)
    _expect(isinstance(samples, int) and not isinstance(samples, bool) and samples >= 1,
            f"{source}: samples must be a positive integer")

    tolerances = dict(DEFAULT_TOLERANCES)
    for key, value in data.get("tolerances", {}).items():
        _expect(key in DEFAULT_TOLERANCES, f"{source}: unknown tolerance {key!r}")
        _expect(isinstance(value, (int, float)) and value >= 0,
                f"{source}: tolerance {key} must be a non-negative number")
        tolerances[key] = float(value)

    ordered = tuple(s for s in SUITES if s in suites)
    return RunConfig(metric["A"], metric["B"], metric["C"],
                     [[float(t) for t in p] for p in points], seed, ordered, samples,
                     tolerances)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config(text, str(path))
