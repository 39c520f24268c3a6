"""Scenario configuration: flat ``key = value`` text with array literals.

The syntax is a subset of TOML, so the parsing is left to tomllib
(tomli on Python 3.10). Only RS_MAXWELL_SEED may override a value from the
environment.
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import asdict, dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SUITES = ("algebra", "covariance", "constitutive", "esposito", "curved", "evolve")
METRICS = ("minkowski_cartesian", "minkowski_spherical", "schwarzschild")
SEED_ENV = "RS_MAXWELL_SEED"


class ConfigError(ValueError):
    pass


@dataclass
class ScenarioConfig:
    suite: str
    seed: int = 0
    # covariance
    rotations: int = 200
    boosts: int = 200
    bmax: float = 5.0
    # constitutive
    triples: int = 100
    eps: object = None
    mu: object = None
    alpha: object = None
    beta: object = None
    # esposito
    u_samples: int = 100
    # curved
    metric: list = field(default_factory=lambda: list(METRICS))
    M: float = 1.0
    points: object = 10
    fields: int = 20
    fd_step: float = 1e-5
    fd_coarse: float = 1e-2
    r_min: float = 3.0
    r_max: float = 10.0
    # evolve
    grid_n: int = 128
    cfl: float = 0.5
    periods: float = 1.0
    k: int = 1
    trajectory: str | None = None
    out: str | None = None

    def echo(self) -> dict:
        """Plain dict of every effective setting (None entries dropped)."""
        return {k: v for k, v in asdict(self).items() if v is not None}


_FIELDS = {f for f in ScenarioConfig.__dataclass_fields__}


def _positive_int(name, v, minimum=1):
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}, got {v!r}")
    return v


def _positive_float(name, v, upper=None):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0:
        raise ConfigError(f"{name} must be a positive number, got {v!r}")
    if upper is not None and v > upper:
        raise ConfigError(f"{name} must not exceed {upper}, got {v!r}")
    return float(v)


def _medium_entry(name, v, positive):
    if v is None:
        return None
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        if not math.isfinite(v) or (positive and v <= 0):
            raise ConfigError(f"{name} must be {'positive and ' if positive else ''}finite, got {v!r}")
        return float(v)
    ok = (isinstance(v, list) and len(v) == 3
          and all(isinstance(r, list) and len(r) == 3 for r in v)
          and all(isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)
                  for r in v for x in r))
    if not ok:
        raise ConfigError(f"{name} must be a number or a 3x3 array, got {v!r}")
    return [[float(x) for x in r] for r in v]


def validate(raw: dict, suite: str) -> ScenarioConfig:
    unknown = sorted(set(raw) - _FIELDS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if "suite" in raw and raw["suite"] != suite:
        raise ConfigError(f"config is for suite {raw['suite']!r} but {suite!r} was requested")
    c = ScenarioConfig(suite=suite)
    for key, v in raw.items():
        setattr(c, key, v)

    if isinstance(c.seed, bool) or not isinstance(c.seed, int) or c.seed < 0:
        raise ConfigError(f"seed must be a non-negative integer, got {c.seed!r}")
    for name in ("rotations", "boosts", "triples", "u_samples", "fields", "k"):
        _positive_int(name, getattr(c, name))
    c.grid_n = _positive_int("grid_n", c.grid_n, 8)
    c.bmax = _positive_float("bmax", c.bmax, 20.0)
    c.M = _positive_float("M", c.M)
    c.fd_step = _positive_float("fd_step", c.fd_step, 0.1)
    c.fd_coarse = _positive_float("fd_coarse", c.fd_coarse, 0.1)
    c.cfl = _positive_float("cfl", c.cfl, 1.0)
    c.periods = _positive_float("periods", c.periods)
    c.r_min = _positive_float("r_min", c.r_min)
    c.r_max = _positive_float("r_max", c.r_max)
    if c.r_max < c.r_min:
        raise ConfigError("r_max must not be below r_min")
    if c.r_min <= 2 * c.M and ("schwarzschild" in (c.metric if isinstance(c.metric, list) else [c.metric])):
        raise ConfigError(f"r_min = {c.r_min} must lie outside the horizon 2M = {2 * c.M}")

    if isinstance(c.metric, str):
        c.metric = [c.metric]
    if not isinstance(c.metric, list) or not c.metric or any(m not in METRICS for m in c.metric):
        raise ConfigError(f"metric must be one of (or a list of) {', '.join(METRICS)}, got {c.metric!r}")

    if isinstance(c.points, list):
        if not c.points or not all(isinstance(p, list) and len(p) == 4
                                   and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in p)
                                   for p in c.points):
            raise ConfigError("points must be a count or a list of 4-component coordinate arrays")
        c.points = [[float(x) for x in p] for p in c.points]
    else:
        _positive_int("points", c.points)

    c.eps = _medium_entry("eps", c.eps, True)
    c.mu = _medium_entry("mu", c.mu, True)
    c.alpha = _medium_entry("alpha", c.alpha, False)
    c.beta = _medium_entry("beta", c.beta, False)
    for name in ("trajectory", "out"):
        v = getattr(c, name)
        if v is not None and not isinstance(v, str):
            raise ConfigError(f"{name} must be a path string")
    return c


def parse_config_text(text: str, suite: str, env=None) -> ScenarioConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    nested = [k for k, v in raw.items() if isinstance(v, dict)]
    if nested:
        raise ConfigError(f"config must be flat key = value pairs; found tables: {', '.join(nested)}")
    env = os.environ if env is None else env
    if env.get(SEED_ENV, "") != "":
        try:
            raw["seed"] = int(env[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer, got {env[SEED_ENV]!r}") from None
    return validate(raw, suite)


def load_config(path, suite: str, env=None) -> ScenarioConfig:
    """Read and validate a config file. OSError propagates (I/O failure)."""
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise ConfigError("config is not valid UTF-8 text") from None
    return parse_config_text(text, suite, env)
