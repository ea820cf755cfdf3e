"""Run configuration and evaluator parameters.

`RunConfig` mirrors the CLI surface; every field can be overridden by a
ZETA_-prefixed environment variable (e.g. ZETA_M_MAX=50) and then by an
explicit CLI flag. `EvalParams` holds the numeric knobs of the
Euler-Maclaurin evaluator; defaults are tuned for binary64 over the
supported region (|t| <= 5000, sigma > -(2K+1)).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace

from ._bernoulli import MAX_CORRECTION_TERMS
from .errors import ConfigError

ENV_PREFIX = "ZETA_"

T_SUPPORT_MAX = 5000.0
SIGMA_SUPPORT_MIN = -10.0
SIGMA_SUPPORT_MAX = 40.0


@dataclass(frozen=True)
class EvalParams:
    """Truncation and tolerance knobs for the zeta evaluator."""

    beta: float = 1.2  # truncation N = ceil(beta * (|t| + 10))
    correction_terms: int = 12  # Bernoulli terms K in the tail
    precision_target: float = 1e-10  # refuse results worse than this (scale-aware)
    zero_floor: float = 1e-12  # below this |zeta|, phase is refused
    pole_radius: float = 1e-8  # reject s within this distance of 1

    def __post_init__(self) -> None:
        if not self.beta > 0.0:
            raise ConfigError(f"beta must be positive, got {self.beta}")
        if not 1 <= self.correction_terms <= MAX_CORRECTION_TERMS - 1:
            raise ConfigError(
                f"correction_terms must be in [1, {MAX_CORRECTION_TERMS - 1}], "
                f"got {self.correction_terms}"
            )
        for name in ("precision_target", "zero_floor", "pole_radius"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"{name} must be positive")


def _default_workers() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class RunConfig:
    """End-to-end pipeline configuration (one experiment run)."""

    m_max: int = 200
    sigma_right: float = 8.0
    sigma_left: float = -3.0
    measurement_sigma: float = 0.5
    rounding_emulation: bool = True
    output_dir: str = "out"
    scan_step: float = 0.05
    worker_count: int = field(default_factory=_default_workers)
    eval_params: EvalParams = field(default_factory=EvalParams)

    def __post_init__(self) -> None:
        if self.m_max < 1:
            raise ConfigError(f"m_max must be >= 1, got {self.m_max}")
        if not self.sigma_left < self.measurement_sigma < self.sigma_right:
            raise ConfigError(
                "require sigma_left < measurement_sigma < sigma_right, got "
                f"{self.sigma_left} / {self.measurement_sigma} / {self.sigma_right}"
            )
        if not self.scan_step > 0.0:
            raise ConfigError(f"scan_step must be positive, got {self.scan_step}")
        if self.worker_count < 1:
            raise ConfigError(f"worker_count must be >= 1, got {self.worker_count}")


_BOOL_WORDS = {
    "1": True, "true": True, "yes": True, "on": True,
    "0": False, "false": False, "no": False, "off": False,
}


def parse_bool(text: str) -> bool:
    try:
        return _BOOL_WORDS[text.strip().lower()]
    except KeyError:
        raise ConfigError(f"not a boolean: {text!r}") from None


def _coerce(name: str, kind: type, text: str):
    try:
        if kind is bool:
            return parse_bool(text)
        if kind is int:
            return int(text)
        if kind is float:
            return float(text)
        return text
    except ValueError:
        raise ConfigError(f"bad value for {name}: {text!r}") from None


def env_overrides(environ=None) -> dict:
    """Collect config overrides from ZETA_* environment variables.

    Returns a flat dict: RunConfig field names plus EvalParams field
    names (e.g. ZETA_PRECISION_TARGET -> "precision_target").
    """
    if environ is None:
        environ = os.environ
    out = {}
    for name, kind in {**_FIELD_TYPES, **_EVAL_FIELD_TYPES}.items():
        raw = environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            out[name] = _coerce(name, kind, raw)
    return out


_FIELD_TYPES = {
    "m_max": int,
    "sigma_right": float,
    "sigma_left": float,
    "measurement_sigma": float,
    "rounding_emulation": bool,
    "output_dir": str,
    "scan_step": float,
    "worker_count": int,
}

_EVAL_FIELD_TYPES = {
    "beta": float,
    "correction_terms": int,
    "precision_target": float,
    "zero_floor": float,
    "pole_radius": float,
}


def config_from_sources(cli_overrides: dict | None = None, environ=None) -> RunConfig:
    """Defaults, then ZETA_* env vars, then explicit CLI values.

    Both dicts are flat; EvalParams field names are split out into the
    nested eval_params. None values in cli_overrides mean "not given".
    """
    values = env_overrides(environ)
    if cli_overrides:
        values.update({k: v for k, v in cli_overrides.items() if v is not None})
    eval_values = {k: values.pop(k) for k in list(values) if k in _EVAL_FIELD_TYPES}
    unknown = set(values) - set(_FIELD_TYPES)
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    values["eval_params"] = EvalParams(**eval_values)
    return RunConfig(**values)


def with_overrides(config: RunConfig, **changes) -> RunConfig:
    return replace(config, **changes)
