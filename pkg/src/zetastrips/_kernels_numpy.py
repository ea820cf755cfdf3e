"""Pure-numpy evaluation kernels.

Reference implementations of the hot numeric paths: Euler-Maclaurin
continuation of zeta, its derivative, the Riemann-Siegel rotation angle,
and the real critical-line function used for zero scanning. The numba
module mirrors these signatures; `zetastrips.backend` picks one.

All kernels receive `ln_n`, a cache with ln_n[i] = log(i + 1), sized by
the caller to at least n_trunc - 1 entries.
"""

from __future__ import annotations

import math

import numpy as np

from ._bernoulli import BERN_OVER_FACT

BACKEND_NAME = "numpy"


def _em_tail(s: complex, n_trunc: int, k_corr: int):
    """Correction terms and remainder bound of the Euler-Maclaurin sum.

    Returns (tail, bound): tail covers N^{1-s}/(s-1) + N^{-s}/2 plus
    k_corr Bernoulli terms; bound is the first omitted term inflated by
    |s + 2K + 1| / (sigma + 2K + 1), infinite when that factor is invalid.
    """
    nf = float(n_trunc)
    ln_nf = math.log(nf)
    n_pow_ms = np.exp(-s * ln_nf)  # N^{-s}
    tail = n_pow_ms * nf / (s - 1.0) + 0.5 * n_pow_ms

    n_m2 = 1.0 / (nf * nf)
    p = s  # rising product s(s+1)...(s+2k-2)
    e = n_pow_ms / nf  # N^{1-s-2k}
    term = complex(0.0)
    for k in range(1, k_corr + 1):
        if k > 1:
            p = p * (s + (2 * k - 3)) * (s + (2 * k - 2))
            e = e * n_m2
        term = BERN_OVER_FACT[k - 1] * p * e
        tail = tail + term

    k = k_corr + 1
    p = p * (s + (2 * k - 3)) * (s + (2 * k - 2))
    e = e * n_m2
    omitted = BERN_OVER_FACT[k - 1] * p * e
    denom = s.real + 2.0 * k_corr + 1.0
    if denom > 0.0:
        bound = abs(omitted) * abs(s + (2 * k_corr + 1)) / denom
    else:
        bound = math.inf
    return tail, bound


def zeta_em(sigma: float, t: float, n_trunc: int, k_corr: int, ln_n: np.ndarray):
    """Euler-Maclaurin zeta value. Returns (re, im, bound)."""
    lns = ln_n[1 : n_trunc - 1]
    amp = np.exp(-sigma * lns)
    ph = t * lns
    sre = 1.0 + float(np.sum(amp * np.cos(ph)))
    sim = -float(np.sum(amp * np.sin(ph)))
    tail, bound = _em_tail(complex(sigma, t), n_trunc, k_corr)
    total = complex(sre, sim) + tail
    return total.real, total.imag, bound


def zeta_em_with_deriv(
    sigma: float, t: float, n_trunc: int, k_corr: int, ln_n: np.ndarray
):
    """Zeta and its derivative in one pass.

    Returns (zre, zim, dre, dim, zbound, dbound).
    """
    s = complex(sigma, t)
    lns = ln_n[1 : n_trunc - 1]
    amp = np.exp(-sigma * lns)
    cph = np.cos(t * lns)
    sph = np.sin(t * lns)
    re_terms = amp * cph
    im_terms = amp * sph
    sre = 1.0 + float(np.sum(re_terms))
    sim = -float(np.sum(im_terms))
    # term-wise derivative: -sum ln(n) n^{-s}
    dre = -float(np.sum(lns * re_terms))
    dim = float(np.sum(lns * im_terms))

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
    dp = complex(1.0)
    e = n_pow_ms / nf
    for k in range(1, k_corr + 1):
        if k > 1:
            q = (s + (2 * k - 3)) * (s + (2 * k - 2))
            dq = 2.0 * s + (4 * k - 5)
            dp = dp * q + p * dq
            p = p * q
            e = e * n_m2
        c = BERN_OVER_FACT[k - 1]
        tail = tail + c * p * e
        dtail = dtail + c * e * (dp - ln_nf * p)

    k = k_corr + 1
    q = (s + (2 * k - 3)) * (s + (2 * k - 2))
    dq = 2.0 * s + (4 * k - 5)
    dp = dp * q + p * dq
    p = p * q
    e = e * n_m2
    c = BERN_OVER_FACT[k - 1]
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


def zeta_em_many(
    sigmas: np.ndarray,
    ts: np.ndarray,
    n_truncs: np.ndarray,
    k_corr: int,
    ln_n: np.ndarray,
):
    """Vectorized-over-points zeta evaluation. Returns (re[], im[], bound[])."""
    npts = sigmas.shape[0]
    out_re = np.empty(npts)
    out_im = np.empty(npts)
    out_bd = np.empty(npts)
    for i in range(npts):
        out_re[i], out_im[i], out_bd[i] = zeta_em(
            float(sigmas[i]), float(ts[i]), int(n_truncs[i]), k_corr, ln_n
        )
    return out_re, out_im, out_bd


def dirichlet_sum(sigma: float, t: float, terms: int, ln_n: np.ndarray):
    """Partial sum of n^{-s} for n = 1..terms. Returns (re, im)."""
    lns = ln_n[1:terms]
    amp = np.exp(-sigma * lns)
    ph = t * lns
    re = 1.0 + float(np.sum(amp * np.cos(ph)))
    im = -float(np.sum(amp * np.sin(ph)))
    return re, im


def rs_theta_val(t: float) -> float:
    """Riemann-Siegel rotation angle, asymptotic with 4 correction terms."""
    u = 1.0 / t
    u2 = u * u
    return (
        0.5 * t * math.log(t / (2.0 * math.pi))
        - 0.5 * t
        - 0.125 * math.pi
        + u * (1.0 / 48.0 + u2 * (7.0 / 5760.0 + u2 * (31.0 / 80640.0 + u2 * (127.0 / 430080.0))))
    )


def hardy_z(t: float, n_trunc: int, k_corr: int, ln_n: np.ndarray) -> float:
    """Real rotation of zeta on the critical line; sign changes mark zeros."""
    zre, zim, _ = zeta_em(0.5, t, n_trunc, k_corr, ln_n)
    theta = rs_theta_val(t)
    return math.cos(theta) * zre - math.sin(theta) * zim


def hardy_z_many(
    ts: np.ndarray, n_truncs: np.ndarray, k_corr: int, ln_n: np.ndarray
) -> np.ndarray:
    out = np.empty(ts.shape[0])
    for i in range(ts.shape[0]):
        out[i] = hardy_z(float(ts[i]), int(n_truncs[i]), k_corr, ln_n)
    return out


def warmup() -> None:
    """No-op; numba counterpart triggers JIT compilation here."""
