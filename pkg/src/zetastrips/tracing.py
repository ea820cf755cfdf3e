"""Predictor-corrector tracing of the Im(zeta) = 0 contour lines.

A contour is advanced by unit-tangent predictor steps (tangent from the
Cauchy-Riemann relations: proportional to (Re zeta', -Im zeta') in the
(sigma, t) plane) followed by a 1-D Newton corrector along the local
normal, which in complex form is s <- s - i Im(zeta(s)) / zeta'(s).

Traces launched at sigma_right run leftward until they fall past
sigma_left (LeftBoundary), get captured by a critical-line zero
(ZeroHit), or exhaust their budgets (Aborted). Zero capture engages a
complex Newton descent once |zeta| is small near a known zero, so the
terminal approach is not limited by the minimum continuation step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import backend
from .config import EvalParams
from .errors import (
    BranchError,
    DomainError,
    NoCrossingError,
    PrecisionError,
    SeedError,
    StallError,
)
from .zeros import CriticalZero
from .zetacore import ComplexPoint, n_trunc_for

_DEFAULT = EvalParams()

H_MIN = 1e-3
H_MAX = 0.25
H_INIT = 0.05
CORRECTOR_TOL = 1e-10  # on |Im zeta|, relative to max(1, |zeta|)
CORRECTOR_MAX_ITERS = 8
STALL_LIMIT = 5  # consecutive corrector failures before StallError
CAPTURE_ABS_Z = 1e-4  # |zeta| below this ...
CAPTURE_DIST = 0.05  # ... within this distance of a known zero => ZeroHit
CAPTURE_TRY_Z = 5e-3  # start the Newton descent toward a zero this early
LAUNCH_RADIUS = 0.01  # classify_zero_contour offset from the zero
T_TRACE_MIN = 2.0
T_TRACE_MAX = 5000.0
MAX_STEPS = 60000
SEED_TOL = 1e-13  # absolute |Im zeta| at polished seeds (|zeta| ~ 1 there)
SADDLE_TRUST = 0.4  # step <= this fraction of |zeta'|/|zeta''|
SADDLE_H_MIN = 5e-5  # smallest step the saddle cap may force
SADDLE_PROBE = 3e-4  # FD half-width for the |zeta''| probe


@dataclass(frozen=True)
class LeftBoundary:
    """Trace left the window at sigma_left."""

    sigma: float


@dataclass(frozen=True)
class RightBoundary:
    """Trace reached sigma_right (used by contour classification)."""

    sigma: float


@dataclass(frozen=True)
class ZeroHit:
    """Trace terminated on a critical-line zero."""

    t: float
    ordinal: int


@dataclass(frozen=True)
class Aborted:
    """Trace exhausted a budget or left the supported region."""

    reason: str


Terminus = LeftBoundary | RightBoundary | ZeroHit | Aborted


@dataclass(frozen=True)
class ContourTrace:
    """Polyline on which Im(zeta) = 0, with a classified terminus."""

    points: np.ndarray  # shape (n, 2): columns sigma, t
    start: ComplexPoint
    terminus: Terminus
    kind: str  # 'boundary' | 'primary-candidate'


def _fused(sc: complex, params: EvalParams):
    """(zeta, zeta') at a complex point via the fused kernel, with gate."""
    kern = backend.get_kernels()
    n = n_trunc_for(sc.imag, params)
    ln_n = backend.ln_values(n)
    zre, zim, dre, dim, zbound, _ = kern.zeta_em_with_deriv(
        sc.real, sc.imag, n, params.correction_terms, ln_n
    )
    z = complex(zre, zim)
    if not math.isfinite(zbound) or zbound > params.precision_target * max(1.0, abs(z)):
        raise PrecisionError(
            f"tracer evaluation at ({sc.real:.6g}, {sc.imag:.6g}) has bound {zbound:.3e}"
        )
    return z, complex(dre, dim)


def _second_deriv(sc: complex, params: EvalParams) -> float:
    """|zeta''| by a central difference of zeta' along sigma."""
    _, d_plus = _fused(sc + SADDLE_PROBE, params)
    _, d_minus = _fused(sc - SADDLE_PROBE, params)
    return abs(d_plus - d_minus) / (2.0 * SADDLE_PROBE)


def _polish_im_zero_in_t(
    sigma: float, t0: float, params: EvalParams, tol: float, max_iters: int = 25
) -> float:
    """Newton in t for Im zeta(sigma + it) = 0 (d/dt Im zeta = Re zeta')."""
    t = t0
    for _ in range(max_iters):
        z, dz = _fused(complex(sigma, t), params)
        if abs(z.imag) <= tol * max(1.0, abs(z)):
            return t
        if dz.real == 0.0:
            break
        dt = -z.imag / dz.real
        if not math.isfinite(dt) or abs(dt) > 1.0:
            break
        t += dt
    raise SeedError(
        f"Im zeta Newton polish failed to converge at sigma = {sigma}, t0 = {t0}"
    )


def seed_starts(
    m_max: int, sigma_right: float, params: EvalParams = _DEFAULT
) -> list[tuple[ComplexPoint, str]]:
    """Polished contour start points at sigma_right.

    One start per k = 2 .. 2*m_max + 2 near t = k pi / ln 2: even k are
    strip boundaries (strip m is bounded by k = 2m and k = 2m + 2), odd
    k are primary-zero candidates. Requires sigma_right far enough right
    that the two-term Dirichlet approximation pins the heights down.
    """
    if m_max < 1:
        raise DomainError(f"m_max must be >= 1, got {m_max}")
    anchor, _ = _fused(complex(sigma_right, 0.0), params)
    if abs(anchor - 1.0) >= 0.3:
        raise SeedError(
            f"sigma_right = {sigma_right} too small: |zeta - 1| = "
            f"{abs(anchor - 1.0):.3f} >= 0.3, seeds would be ambiguous"
        )
    ln2 = math.log(2.0)
    out: list[tuple[ComplexPoint, str]] = []
    for k in range(2, 2 * m_max + 3):
        t0 = k * math.pi / ln2
        t = _polish_im_zero_in_t(sigma_right, t0, params, tol=SEED_TOL)
        kind = "boundary" if k % 2 == 0 else "primary-candidate"
        out.append((ComplexPoint(sigma_right, t), kind))
    return out


def _zero_arrays(zeros: Sequence[CriticalZero]):
    ts = np.array([z.t for z in zeros], dtype=float)
    ords = np.array([z.ordinal for z in zeros], dtype=np.int64)
    order = np.argsort(ts)
    return ts[order], ords[order]


def _nearest_zero(t: float, zero_ts: np.ndarray):
    i = int(np.searchsorted(zero_ts, t))
    best = None
    for j in (i - 1, i):
        if 0 <= j < zero_ts.shape[0]:
            d = abs(t - float(zero_ts[j]))
            if best is None or d < best[1]:
                best = (j, d)
    return best  # (index, |t - zero_t|) or None


def _correct(
    sc: complex, h: float, params: EvalParams
) -> tuple[bool, complex, complex, complex, int]:
    """Newton along the normal until Im zeta vanishes (scale-aware)."""
    p = sc
    moved = 0.0
    for it in range(CORRECTOR_MAX_ITERS):
        z, dz = _fused(p, params)
        if abs(z.imag) <= CORRECTOR_TOL * max(1.0, abs(z)):
            return True, p, z, dz, it
        if dz == 0.0:
            return False, p, z, dz, it
        delta = -1j * z.imag / dz
        step = abs(delta)
        moved += step
        # refuse corrections comparable to the predictor step: likely a
        # branch jump, shrink h instead
        if step > max(0.75 * h, 1e-9) or moved > 1.5 * max(h, 1e-6):
            return False, p, z, dz, it
        p += delta
    return False, p, z, dz, CORRECTOR_MAX_ITERS


def _try_capture(
    sc: complex,
    z: complex,
    dz: complex,
    zero_ts: np.ndarray,
    zero_ords: np.ndarray,
    params: EvalParams,
):
    near = _nearest_zero(sc.imag, zero_ts)
    if near is None:
        return None
    j, _ = near
    zt = float(zero_ts[j])
    if math.hypot(sc.real - 0.5, sc.imag - zt) >= CAPTURE_DIST:
        return None
    p, zp, dzp = sc, z, dz
    for _ in range(8):
        if abs(zp) < CAPTURE_ABS_Z:
            if math.hypot(p.real - 0.5, p.imag - zt) < CAPTURE_DIST:
                return ZeroHit(zt, int(zero_ords[j]))
            return None
        if dzp == 0.0:
            return None
        step = -zp / dzp
        if abs(step) > CAPTURE_DIST:
            return None
        p += step
        zp, dzp = _fused(p, params)
    return None


def _trace_engine(
    start: ComplexPoint,
    dir0: tuple[float, float],
    params: EvalParams,
    *,
    sigma_left: float,
    sigma_right_stop: float | None,
    sigma_right_runaway: float,
    zeros: Sequence[CriticalZero] | None,
    capture: bool,
    kind: str,
) -> ContourTrace:
    if zeros:
        zero_ts, zero_ords = _zero_arrays(zeros)
    else:
        zero_ts = np.empty(0)
        zero_ords = np.empty(0, dtype=np.int64)
        capture = False

    def proximity_cap(point: complex, h: float) -> float:
        # keep steps a fraction of the distance to the nearest known zero,
        # so a trace cannot leap across a zero's neighborhood unsampled
        near = _nearest_zero(point.imag, zero_ts)
        if near is None:
            return h
        dist = math.hypot(point.real - 0.5, point.imag - float(zero_ts[near[0]]))
        if dist < 0.4:
            return min(h, max(H_MIN, 0.25 * dist))
        return h

    sc = complex(start.sigma, start.t)
    z, dz = _fused(sc, params)
    if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
        raise DomainError(
            f"trace start ({start.sigma}, {start.t}) is not on an Im zeta = 0 "
            f"contour: |Im zeta| = {abs(z.imag):.3e}"
        )

    norm0 = math.hypot(*dir0)
    prev = (dir0[0] / norm0, dir0[1] / norm0)
    pts = [(sc.real, sc.imag)]
    h = H_INIT
    fails = 0
    last_capture_z = math.inf
    ddz = _second_deriv(sc, params)

    def finish(terminus: Terminus) -> ContourTrace:
        return ContourTrace(np.array(pts), start, terminus, kind)

    for _ in range(MAX_STEPS):
        tau_s, tau_t = dz.real, -dz.imag
        norm = math.hypot(tau_s, tau_t)
        if norm == 0.0:
            return finish(Aborted("zeta' vanished on contour"))
        tau_s /= norm
        tau_t /= norm
        if tau_s * prev[0] + tau_t * prev[1] < 0.0:
            tau_s, tau_t = -tau_s, -tau_t

        h_step = proximity_cap(sc, h)
        if ddz > 0.0:
            # Trust-radius cap near saddles of Im zeta (zeros of zeta'):
            # there two contour branches pass within ~|zeta'|/|zeta''| of
            # each other and the curve hairpins on the same scale, so an
            # uncapped step would hop branches with no sign of trouble.
            h_step = min(h_step, max(SADDLE_H_MIN, SADDLE_TRUST * abs(dz) / ddz))
        pred = sc + complex(h_step * tau_s, h_step * tau_t)
        ok, new, z_new, dz_new, iters = _correct(pred, h_step, params)
        if not ok:
            fails += 1
            if fails >= STALL_LIMIT:
                raise StallError(
                    f"corrector failed {STALL_LIMIT} consecutive times near "
                    f"({sc.real:.6g}, {sc.imag:.6g}), h = {h:.3e}"
                )
            h = max(0.5 * h, H_MIN)
            continue
        fails = 0

        step_vec = new - sc
        if abs(step_vec) > 0.0:
            prev = (step_vec.real / abs(step_vec), step_vec.imag / abs(step_vec))
        sc, z, dz = new, z_new, dz_new
        ddz = _second_deriv(sc, params)
        pts.append((sc.real, sc.imag))

        if capture:
            if abs(z) > 2.0 * CAPTURE_TRY_Z:
                last_capture_z = math.inf  # re-arm once clear of the zero
            elif abs(z) < CAPTURE_TRY_Z and abs(z) < 0.5 * last_capture_z:
                last_capture_z = abs(z)
                hit = _try_capture(sc, z, dz, zero_ts, zero_ords, params)
                if hit is not None:
                    pts.append((0.5, hit.t))
                    return finish(hit)

        if sc.real < sigma_left:
            return finish(LeftBoundary(sigma_left))
        if sigma_right_stop is not None and sc.real >= sigma_right_stop:
            return finish(RightBoundary(sigma_right_stop))
        if sc.real > sigma_right_runaway:
            return finish(Aborted("ran past the right launch window"))
        if not (T_TRACE_MIN <= abs(sc.imag) <= T_TRACE_MAX):
            return finish(Aborted("left the supported height range"))

        if iters <= 2:
            h = min(1.3 * h, H_MAX)
        elif iters >= 5:
            h = max(0.6 * h, H_MIN)
        if abs(z) < 0.1:
            h = min(h, max(H_MIN, 0.1 * abs(z)))

    return finish(Aborted("step budget exhausted"))


def trace_im_zero(
    start: ComplexPoint,
    sigma_left: float,
    params: EvalParams = _DEFAULT,
    zeros: Sequence[CriticalZero] | None = None,
    kind: str = "boundary",
) -> ContourTrace:
    """Trace a contour leftward from its seed until a terminus."""
    return _trace_engine(
        start,
        (-1.0, 0.0),
        params,
        sigma_left=sigma_left,
        sigma_right_stop=None,
        sigma_right_runaway=start.sigma + 2.0,
        zeros=zeros,
        capture=True,
        kind=kind,
    )


def crossing_at_sigma(
    trace: ContourTrace, sigma: float = 0.5, params: EvalParams = _DEFAULT
) -> float:
    """Height at which a trace crosses the vertical line Re s = sigma.

    Linear interpolation on the polyline seeds a Newton polish of
    Im zeta(sigma + it) = 0; a bisection on the segment backs the polish
    up if Newton wanders.
    """
    sig = trace.points[:, 0]
    ts = trace.points[:, 1]
    span = (sig[:-1] - sigma) * (sig[1:] - sigma)
    hits = np.flatnonzero(span <= 0.0)
    if hits.size == 0:
        raise NoCrossingError(
            f"trace (kind {trace.kind!r}) never reaches sigma = {sigma}"
        )
    i = int(hits[0])
    s0, s1 = float(sig[i]), float(sig[i + 1])
    t0, t1 = float(ts[i]), float(ts[i + 1])
    t_guess = t0 if s0 == s1 else t0 + (sigma - s0) * (t1 - t0) / (s1 - s0)
    try:
        return _polish_im_zero_in_t(sigma, t_guess, params, tol=1e-12)
    except SeedError:
        pass

    # fallback: bisection in t over a local window around the segment
    def im_at(t: float) -> float:
        return _fused(complex(sigma, t), params)[0].imag

    lo, hi = min(t0, t1) - 0.25, max(t0, t1) + 0.25
    flo, fhi = im_at(lo), im_at(hi)
    if flo * fhi > 0.0:
        raise NoCrossingError(
            f"could not pin the crossing of sigma = {sigma} near t = {t_guess}"
        )
    for _ in range(200):
        if hi - lo < 1e-13 * max(1.0, abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        fm = im_at(mid)
        if flo * fm > 0.0:
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def classify_zero_contour(
    zero: CriticalZero,
    sigma_right: float,
    params: EvalParams = _DEFAULT,
    sigma_left: float = -3.0,
    zeros: Sequence[CriticalZero] | None = None,
) -> str:
    """Follow the positive-real branch out of a zero; 'right_infinity' if
    it reaches sigma_right, else 'left_infinity'.

    The Im zeta = 0 line through a simple zero leaves it along
    e^{-i arg zeta'}; the side where Re zeta > 0 is the theta = 0 branch.
    """
    rho = complex(0.5, zero.t)
    _, dz = _fused(rho, params)
    if dz == 0.0:
        raise BranchError(f"zeta' vanishes at the zero t = {zero.t}")
    direction = dz.conjugate() / abs(dz)  # e^{-i arg zeta'}
    launch = None
    for sgn in (1.0, -1.0):
        p = rho + sgn * LAUNCH_RADIUS * direction
        zp, dzp = _fused(p, params)
        if zp.real > 0.0:
            # polish onto the contour before committing
            ok, p2, z2, _, _ = _correct(p, 4.0 * LAUNCH_RADIUS, params)
            if ok and z2.real > 0.0:
                launch = (p2, sgn)
                break
    if launch is None:
        raise BranchError(
            f"no positive-real Im zeta = 0 branch within {LAUNCH_RADIUS} "
            f"of the zero at t = {zero.t}"
        )
    p, sgn = launch
    out_dir = (p - rho) / abs(p - rho)
    trace = _trace_engine(
        ComplexPoint(p.real, p.imag),
        (out_dir.real, out_dir.imag),
        params,
        sigma_left=sigma_left,
        sigma_right_stop=sigma_right,
        sigma_right_runaway=sigma_right + 2.0,
        zeros=zeros,
        capture=False,
        kind="classification",
    )
    if isinstance(trace.terminus, RightBoundary):
        return "right_infinity"
    if isinstance(trace.terminus, LeftBoundary):
        return "left_infinity"
    raise BranchError(
        f"classification trace from t = {zero.t} ended with "
        f"{trace.terminus!r} instead of reaching either side"
    )
