"""Critical-line zero location and count validation.

Zeros are found as sign changes of the real function Z(t) (the rotated
critical-line restriction of zeta) on a uniform grid, then refined by
bisection until the bracket collapses to floating-point spacing. The
count of found zeros is validated against the smooth counting formula;
a failed check triggers automatic step halving (up to 3 times) before
surfacing ScanResolutionError.

Determinism: the scan grid depends only on (t_min, t_max, scan_step);
worker parallelism splits that fixed grid and the fixed bracket list
into slices whose per-element results are independent of the split, so
output is identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend
from .config import T_SUPPORT_MAX, EvalParams
from .errors import DomainError, ScanResolutionError
from .zetacore import n_trunc_for

_DEFAULT = EvalParams()

MIN_SCAN_T = 2.0  # Z is evaluable and zero-free well below the first zero at 14.13
RVM_MIN_T = 10.0  # public counting formula contract
MAX_STEP_HALVINGS = 3
DUPLICATE_TOL = 1e-6


@dataclass(frozen=True)
class CriticalZero:
    """A critical-line zero 1/2 + it with its 1-based height ordinal."""

    t: float
    ordinal: int


@dataclass(frozen=True)
class CountCheck:
    """Result of comparing found zeros with the smooth counting formula."""

    found: int
    expected: float
    residual: float
    passed: bool


def _smooth_count(t: float, params: EvalParams) -> float:
    """theta(t)/pi + 1: smooth zero count, no domain guard (t >= 2)."""
    kern = backend.get_kernels()
    return kern.rs_theta_val(max(t, MIN_SCAN_T)) / math.pi + 1.0


def count_zeros_rvm(T: float, params: EvalParams = _DEFAULT) -> float:
    """Smooth approximation to N(T), the zero count up to height T."""
    if T < RVM_MIN_T:
        raise DomainError(f"counting formula needs T >= {RVM_MIN_T}, got {T}")
    if T > T_SUPPORT_MAX:
        raise DomainError(f"T = {T} beyond supported height {T_SUPPORT_MAX}")
    return _smooth_count(T, params)


def _count_check(found: int, t_min: float, t_max: float, params: EvalParams) -> CountCheck:
    expected = _smooth_count(t_max, params) - _smooth_count(t_min, params)
    residual = found - expected
    return CountCheck(found, expected, residual, abs(residual) < 1.0)


def verify_count(
    zeros: list[CriticalZero], t_min: float, t_max: float, params: EvalParams = _DEFAULT
) -> CountCheck:
    """Check len(zeros) against the counting-formula difference.

    Passes when the residual (found minus smooth-count difference) has
    magnitude below 1, i.e. the found count is the integer nearest the
    smooth expectation.
    """
    return _count_check(len(zeros), t_min, t_max, params)


def _scan_grid(t_min: float, t_max: float, step: float) -> np.ndarray:
    n = int(math.floor((t_max - t_min) / step))
    ts = t_min + step * np.arange(n + 1)
    if ts[-1] < t_max:
        ts = np.append(ts, t_max)
    return ts


def _z_values(ts: np.ndarray, params: EvalParams, workers: int) -> np.ndarray:
    kern = backend.get_kernels()
    n_truncs = np.maximum(
        2, np.ceil(params.beta * (np.abs(ts) + 10.0)).astype(np.int64)
    )
    ln_n = backend.ln_values(int(n_truncs.max()))
    k = params.correction_terms
    if workers <= 1 or ts.shape[0] < 64:
        return kern.hardy_z_many(ts, n_truncs, k, ln_n)
    out = np.empty(ts.shape[0])
    slices = np.array_split(np.arange(ts.shape[0]), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = [
            (sl, pool.submit(kern.hardy_z_many, ts[sl], n_truncs[sl], k, ln_n))
            for sl in slices
            if sl.size
        ]
        for sl, fut in futs:
            out[sl] = fut.result()
    return out


def _bisect_slice(
    lo: np.ndarray, hi: np.ndarray, zlo: np.ndarray, params: EvalParams
) -> np.ndarray:
    """Refine sign-change brackets until they collapse to float spacing."""
    kern = backend.get_kernels()
    k = params.correction_terms
    n_truncs = np.maximum(
        2, np.ceil(params.beta * (np.abs(hi) + 10.0)).astype(np.int64)
    )
    ln_n = backend.ln_values(int(n_truncs.max()) if n_truncs.size else 2)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        done = (mid <= lo) | (mid >= hi)
        if bool(np.all(done)):
            break
        zm = kern.hardy_z_many(mid, n_truncs, k, ln_n)
        same = (zm * zlo > 0.0) & ~done
        opposite = ~same & ~done
        lo[same] = mid[same]
        zlo[same] = zm[same]
        hi[opposite] = mid[opposite]
    return 0.5 * (lo + hi)


def refine_zero(t_approx: float, halfwidth: float = 0.02, params: EvalParams = _DEFAULT) -> float:
    """Bisection-refine a single zero from an approximate height."""
    kern = backend.get_kernels()
    n = n_trunc_for(t_approx + halfwidth, params)
    ln_n = backend.ln_values(n)
    k = params.correction_terms
    lo, hi = t_approx - halfwidth, t_approx + halfwidth
    zlo = kern.hardy_z(lo, n, k, ln_n)
    zhi = kern.hardy_z(hi, n, k, ln_n)
    if zlo == 0.0:
        return lo
    if zhi == 0.0:
        return hi
    if zlo * zhi > 0.0:
        raise DomainError(
            f"no sign change of Z in [{lo}, {hi}]; not a bracketed zero"
        )
    ts = _bisect_slice(
        np.array([lo]), np.array([hi]), np.array([zlo]), params
    )
    return float(ts[0])


def _scan_once(
    t_min: float,
    t_max: float,
    step: float,
    params: EvalParams,
    workers: int,
) -> list[float]:
    ts = _scan_grid(t_min, t_max, step)
    zs = _z_values(ts, params, workers)

    exact = np.flatnonzero(zs == 0.0)
    change = np.flatnonzero(np.sign(zs[:-1]) * np.sign(zs[1:]) < 0.0)

    lo = ts[change].copy()
    hi = ts[change + 1].copy()
    zlo = zs[change].copy()
    if lo.size:
        if workers > 1 and lo.size >= 2 * workers:
            refined_parts: list[np.ndarray] = []
            slices = np.array_split(np.arange(lo.size), workers)
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futs = [
                    pool.submit(_bisect_slice, lo[sl], hi[sl], zlo[sl], params)
                    for sl in slices
                    if sl.size
                ]
                refined_parts = [f.result() for f in futs]
            refined = np.concatenate(refined_parts)
        else:
            refined = _bisect_slice(lo, hi, zlo, params)
        found = list(map(float, refined))
    else:
        found = []
    found.extend(float(ts[i]) for i in exact)
    found.sort()
    deduped: list[float] = []
    for t in found:
        if not deduped or t - deduped[-1] > DUPLICATE_TOL:
            deduped.append(t)
    return deduped


def find_critical_zeros(
    t_min: float,
    t_max: float,
    params: EvalParams = _DEFAULT,
    scan_step: float = 0.05,
    workers: int = 1,
) -> list[CriticalZero]:
    """All critical-line zeros in [t_min, t_max], ordinals assigned by height.

    The scan step is halved (up to 3 times) whenever the post-hoc count
    check disagrees with the smooth counting formula by 1 or more.
    """
    if not (MIN_SCAN_T <= t_min <= t_max <= T_SUPPORT_MAX):
        raise DomainError(
            f"need {MIN_SCAN_T} <= t_min <= t_max <= {T_SUPPORT_MAX}, "
            f"got [{t_min}, {t_max}]"
        )
    if scan_step <= 0.0:
        raise DomainError(f"scan_step must be positive, got {scan_step}")
    if t_min == t_max:
        return []

    step = scan_step
    heights: list[float] = []
    for attempt in range(MAX_STEP_HALVINGS + 1):
        heights = _scan_once(t_min, t_max, step, params, workers)
        check = _count_check(len(heights), t_min, t_max, params)
        if check.passed:
            break
        step *= 0.5
    else:
        raise ScanResolutionError(
            f"count check still failing after {MAX_STEP_HALVINGS} halvings: "
            f"found {check.found}, expected {check.expected:.3f} on [{t_min}, {t_max}]"
        )

    base = int(round(_smooth_count(t_min, params))) if t_min > RVM_MIN_T else 0
    return [CriticalZero(t, base + i + 1) for i, t in enumerate(heights)]
