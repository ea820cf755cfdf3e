"""Linear fits, per-strip series, and dispersion comparisons.

The quantitative outputs of a run: ordinary least squares with standard
errors (slope/intercept of strip bottoms and tops against strip number),
the per-strip series behind each figure CSV, the half-sample variance
comparison of primary scores, and the detrended coefficient-of-variation
contrast between zeros-per-strip and zeros-per-width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, DegenerateError, DomainError
from .strips import Strip, primary_score, rounded_strip, strip_width

SERIES_IDS = ("bottoms", "tops", "widths", "zeros", "zeros_per_width", "primary_score")


@dataclass(frozen=True)
class FitResult:
    """OLS estimates with the standard unbiased (n-2) error model."""

    slope: float
    intercept: float
    slope_stderr: float
    intercept_stderr: float
    n: int


@dataclass(frozen=True)
class SeriesRow:
    m: int
    value: float


@dataclass(frozen=True)
class HalvesReport:
    """Primary-score statistics for the two halves of a run."""

    first_mean: float
    first_var: float
    second_mean: float
    second_var: float
    pooled_mean: float
    pooled_var: float
    variance_ratio: float


@dataclass(frozen=True)
class ScatterReport:
    """Detrended coefficients of variation of two series and their ratio."""

    cv_a: float
    cv_b: float
    ratio: float


def linfit(xs: Sequence[float], ys: Sequence[float]) -> FitResult:
    """Ordinary least squares of ys on xs with parameter standard errors."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    n = x.shape[0]
    if n != y.shape[0]:
        raise DomainError(f"length mismatch: {n} xs vs {y.shape[0]} ys")
    if n < 3:
        raise DegenerateError(f"need at least 3 points for a fit, got {n}")
    xbar = float(np.mean(x))
    ybar = float(np.mean(y))
    dx = x - xbar
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise DegenerateError("xs are all equal; slope undefined")
    slope = float(np.dot(dx, y - ybar)) / sxx
    intercept = ybar - slope * xbar
    resid = y - (intercept + slope * x)
    s2 = float(np.dot(resid, resid)) / (n - 2)
    return FitResult(
        slope=slope,
        intercept=intercept,
        slope_stderr=math.sqrt(s2 / sxx),
        intercept_stderr=math.sqrt(s2 * (1.0 / n + xbar * xbar / sxx)),
        n=n,
    )


def series(
    strips: Sequence[Strip], series_id: str, rounding_emulation: bool = True
) -> list[SeriesRow]:
    """Per-strip series by name; rounded readings when emulation is on."""
    if not strips:
        raise DomainError("empty strip list")
    if series_id not in SERIES_IDS:
        raise ConfigError(f"unknown series {series_id!r}; choose from {SERIES_IDS}")

    rows: list[SeriesRow] = []
    for s in strips:
        r = rounded_strip(s)
        if series_id == "bottoms":
            v = float(r.bottom_rounded) if rounding_emulation else s.bottom_t
        elif series_id == "tops":
            v = float(r.top_rounded) if rounding_emulation else s.top_t
        elif series_id == "widths":
            v = float(r.width_rounded) if rounding_emulation else strip_width(s)
        elif series_id == "zeros":
            v = float(len(s.zeros))
        elif series_id == "zeros_per_width":
            w = float(r.width_rounded) if rounding_emulation else strip_width(s)
            v = len(s.zeros) / w
        else:
            v = primary_score(s).value
        rows.append(SeriesRow(s.m, v))
    return rows


def dispersion_compare(scores: Sequence[float], split: str = "halves") -> HalvesReport:
    """Mean/variance of each half of the score sequence, plus their ratio.

    Sample variances (n-1 denominator). Two zero variances compare as
    ratio 1; a zero second-half variance alone gives an infinite ratio.
    """
    if split != "halves":
        raise ConfigError(f"only the 'halves' split is supported, got {split!r}")
    vals = np.asarray(scores, dtype=float)
    half = vals.shape[0] // 2
    if half < 2:
        raise DomainError(f"need at least 2 scores per half, got {vals.shape[0]} total")
    a, b = vals[:half], vals[half:]
    var_a = float(np.var(a, ddof=1))
    var_b = float(np.var(b, ddof=1))
    if var_a == 0.0 and var_b == 0.0:
        ratio = 1.0
    elif var_b == 0.0:
        ratio = math.inf
    else:
        ratio = var_a / var_b
    return HalvesReport(
        first_mean=float(np.mean(a)),
        first_var=var_a,
        second_mean=float(np.mean(b)),
        second_var=var_b,
        pooled_mean=float(np.mean(vals)),
        pooled_var=float(np.var(vals, ddof=1)),
        variance_ratio=ratio,
    )


def _detrended_cv(rows: Sequence[SeriesRow]) -> float:
    """Residual scatter about an OLS fit in log m, relative to the mean level."""
    x = np.array([math.log(r.m) for r in rows])
    y = np.array([r.value for r in rows])
    fit = linfit(x, y)
    resid = y - (fit.intercept + fit.slope * x)
    mean_level = float(np.mean(y))
    if mean_level == 0.0:
        raise DegenerateError("series mean is zero; CV undefined")
    spread = math.sqrt(float(np.dot(resid, resid)) / (len(rows) - 2))
    return spread / abs(mean_level)


def scatter_dispersion(
    series_a: Sequence[SeriesRow], series_b: Sequence[SeriesRow]
) -> ScatterReport:
    """Compare detrended scatter of two equal-length series (a over b)."""
    if len(series_a) != len(series_b):
        raise DomainError(
            f"series length mismatch: {len(series_a)} vs {len(series_b)}"
        )
    cv_a = _detrended_cv(series_a)
    cv_b = _detrended_cv(series_b)
    ratio = 1.0 if cv_a == cv_b else (math.inf if cv_b == 0.0 else cv_a / cv_b)
    return ScatterReport(cv_a=cv_a, cv_b=cv_b, ratio=ratio)
