"""numba-accelerated evaluation kernels.

Mirrors `_kernels_numpy` signature-for-signature; the jitted inner
functions additionally receive the Bernoulli coefficient table so the
compile cache never bakes in a module-global array. No fastmath: results
must be reproducible across runs and machines, and the scan/bisection
layers rely on exact sign agreement between repeated evaluations.

Importing this module requires numba; `zetastrips.backend` treats an
ImportError here as "accelerated path unavailable".
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ._bernoulli import BERN_OVER_FACT

BACKEND_NAME = "numba"

_JIT = njit(cache=True, nogil=True)


@_JIT
def _zeta_em_core(sigma, t, n_trunc, k_corr, ln_n, bern):
    sre = 1.0
    sim = 0.0
    for i in range(1, n_trunc - 1):
        ln = ln_n[i]
        a = math.exp(-sigma * ln)
        ph = t * ln
        sre += a * math.cos(ph)
        sim -= a * math.sin(ph)

    s = complex(sigma, t)
    nf = float(n_trunc)
    ln_nf = math.log(nf)
    n_pow_ms = np.exp(-s * ln_nf)
    tail = n_pow_ms * nf / (s - 1.0) + 0.5 * n_pow_ms

    n_m2 = 1.0 / (nf * nf)
    p = s
    e = n_pow_ms / nf
    for k in range(1, k_corr + 1):
        if k > 1:
            p = p * (s + (2 * k - 3)) * (s + (2 * k - 2))
            e = e * n_m2
        tail = tail + bern[k - 1] * p * e

    k = k_corr + 1
    p = p * (s + (2 * k - 3)) * (s + (2 * k - 2))
    e = e * n_m2
    omitted = bern[k - 1] * p * e
    denom = sigma + 2.0 * k_corr + 1.0
    if denom > 0.0:
        bound = abs(omitted) * abs(s + (2 * k_corr + 1)) / denom
    else:
        bound = math.inf

    total = complex(sre, sim) + tail
    return total.real, total.imag, bound


@_JIT
def _zeta_em_with_deriv_core(sigma, t, n_trunc, k_corr, ln_n, bern):
    sre = 1.0
    sim = 0.0
    dre = 0.0
    dim = 0.0
    for i in range(1, n_trunc - 1):
        ln = ln_n[i]
        a = math.exp(-sigma * ln)
        c = a * math.cos(t * ln)
        d = a * math.sin(t * ln)
        sre += c
        sim -= d
        dre -= ln * c
        dim += ln * d

    s = complex(sigma, t)
    nf = float(n_trunc)
    ln_nf = math.log(nf)
    n_pow_ms = np.exp(-s * ln_nf)
    inv_sm1 = 1.0 / (s - 1.0)
    tail = n_pow_ms * nf * inv_sm1 + 0.5 * n_pow_ms
    dtail = (
        -ln_nf * n_pow_ms * nf * inv_sm1
        - n_pow_ms * nf * inv_sm1 * inv_sm1
        - 0.5 * ln_nf * n_pow_ms
    )

    n_m2 = 1.0 / (nf * nf)
    p = s
    dp = complex(1.0, 0.0)
    e = n_pow_ms / nf
    for k in range(1, k_corr + 1):
        if k > 1:
            q = (s + (2 * k - 3)) * (s + (2 * k - 2))
            dq = 2.0 * s + (4 * k - 5)
            dp = dp * q + p * dq
            p = p * q
            e = e * n_m2
        c = bern[k - 1]
        tail = tail + c * p * e
        dtail = dtail + c * e * (dp - ln_nf * p)

    k = k_corr + 1
    q = (s + (2 * k - 3)) * (s + (2 * k - 2))
    dq = 2.0 * s + (4 * k - 5)
    dp = dp * q + p * dq
    p = p * q
    e = e * n_m2
    c = bern[k - 1]
    denom = sigma + 2.0 * k_corr + 1.0
    if denom > 0.0:
        infl = abs(s + (2 * k_corr + 1)) / denom
        zbound = abs(c * p * e) * infl
        dbound = abs(c * e * (dp - ln_nf * p)) * infl
    else:
        zbound = math.inf
        dbound = math.inf

    z = complex(sre, sim) + tail
    dz = complex(dre, dim) + dtail
    return z.real, z.imag, dz.real, dz.imag, zbound, dbound


@_JIT
def _zeta_em_many_core(sigmas, ts, n_truncs, k_corr, ln_n, bern):
    npts = sigmas.shape[0]
    out_re = np.empty(npts)
    out_im = np.empty(npts)
    out_bd = np.empty(npts)
    for i in range(npts):
        out_re[i], out_im[i], out_bd[i] = _zeta_em_core(
            sigmas[i], ts[i], n_truncs[i], k_corr, ln_n, bern
        )
    return out_re, out_im, out_bd


@_JIT
def _dirichlet_sum_core(sigma, t, terms, ln_n):
    re = 1.0
    im = 0.0
    for i in range(1, terms):
        ln = ln_n[i]
        a = math.exp(-sigma * ln)
        re += a * math.cos(t * ln)
        im -= a * math.sin(t * ln)
    return re, im


@_JIT
def _rs_theta_core(t):
    u = 1.0 / t
    u2 = u * u
    return (
        0.5 * t * math.log(t / (2.0 * math.pi))
        - 0.5 * t
        - 0.125 * math.pi
        + u * (1.0 / 48.0 + u2 * (7.0 / 5760.0 + u2 * (31.0 / 80640.0 + u2 * (127.0 / 430080.0))))
    )


@_JIT
def _hardy_z_core(t, n_trunc, k_corr, ln_n, bern):
    zre, zim, _ = _zeta_em_core(0.5, t, n_trunc, k_corr, ln_n, bern)
    theta = _rs_theta_core(t)
    return math.cos(theta) * zre - math.sin(theta) * zim


@_JIT
def _hardy_z_many_core(ts, n_truncs, k_corr, ln_n, bern):
    out = np.empty(ts.shape[0])
    for i in range(ts.shape[0]):
        out[i] = _hardy_z_core(ts[i], n_truncs[i], k_corr, ln_n, bern)
    return out


def zeta_em(sigma: float, t: float, n_trunc: int, k_corr: int, ln_n: np.ndarray):
    return _zeta_em_core(sigma, t, n_trunc, k_corr, ln_n, BERN_OVER_FACT)


def zeta_em_with_deriv(
    sigma: float, t: float, n_trunc: int, k_corr: int, ln_n: np.ndarray
):
    return _zeta_em_with_deriv_core(sigma, t, n_trunc, k_corr, ln_n, BERN_OVER_FACT)


def zeta_em_many(
    sigmas: np.ndarray,
    ts: np.ndarray,
    n_truncs: np.ndarray,
    k_corr: int,
    ln_n: np.ndarray,
):
    return _zeta_em_many_core(sigmas, ts, n_truncs, k_corr, ln_n, BERN_OVER_FACT)


def dirichlet_sum(sigma: float, t: float, terms: int, ln_n: np.ndarray):
    return _dirichlet_sum_core(sigma, t, terms, ln_n)


def rs_theta_val(t: float) -> float:
    return _rs_theta_core(t)


def hardy_z(t: float, n_trunc: int, k_corr: int, ln_n: np.ndarray) -> float:
    return _hardy_z_core(t, n_trunc, k_corr, ln_n, BERN_OVER_FACT)


def hardy_z_many(
    ts: np.ndarray, n_truncs: np.ndarray, k_corr: int, ln_n: np.ndarray
) -> np.ndarray:
    return _hardy_z_many_core(ts, n_truncs, k_corr, ln_n, BERN_OVER_FACT)


def warmup() -> None:
    """Force JIT compilation of every kernel with tiny inputs."""
    ln_n = np.log(np.arange(1.0, 40.0))
    nt = np.array([32], dtype=np.int64)
    zeta_em(0.5, 20.0, 32, 6, ln_n)
    zeta_em_with_deriv(0.5, 20.0, 32, 6, ln_n)
    zeta_em_many(np.array([0.5]), np.array([20.0]), nt, 6, ln_n)
    dirichlet_sum(2.0, 20.0, 16, ln_n)
    rs_theta_val(20.0)
    hardy_z(20.0, 32, 6, ln_n)
    hardy_z_many(np.array([20.0]), nt, 6, ln_n)
