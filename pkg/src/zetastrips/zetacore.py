"""Zeta evaluation API: values, derivatives, phase, and cross-checks.

Everything here is a pure function of its inputs plus an `EvalParams`
bundle. The heavy arithmetic lives in the backend kernel modules; this
layer owns domain checking, error-bound policy, and the functional-
equation cross-validation used by the test suite and `validate`.

Accuracy policy: the Euler-Maclaurin truncation bound is computed for
every evaluation and returned in `EvalResult.abs_error_bound`. A result
is refused with PrecisionError when that bound exceeds
`precision_target * max(1, |value|)` — i.e. the target is absolute near
unit scale and relative where the function itself is large (deep in the
left half-plane |zeta| grows like a power of t, where no binary64 method
can hold an absolute 1e-10).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.special import loggamma

from . import backend
from .config import T_SUPPORT_MAX, EvalParams
from .errors import ConfigError, DomainError, NearZeroError, PoleError, PrecisionError

LN2 = math.log(2.0)
_DEFAULT = EvalParams()


@dataclass(frozen=True)
class ComplexPoint:
    """A point s = sigma + i t."""

    sigma: float
    t: float

    def as_complex(self) -> complex:
        return complex(self.sigma, self.t)

    def conjugate(self) -> "ComplexPoint":
        return ComplexPoint(self.sigma, -self.t)


@dataclass(frozen=True)
class EvalResult:
    """A computed value with its truncation-rule error bound."""

    value: complex
    abs_error_bound: float


@dataclass(frozen=True)
class PhaseValue:
    """Principal argument of zeta at a point, in (-pi, pi]."""

    theta: float


def _check_point(s: ComplexPoint) -> None:
    if not (math.isfinite(s.sigma) and math.isfinite(s.t)):
        raise DomainError(f"non-finite point ({s.sigma}, {s.t})")
    if abs(s.t) > T_SUPPORT_MAX:
        raise DomainError(
            f"|t| = {abs(s.t)} exceeds supported height {T_SUPPORT_MAX}"
        )


def n_trunc_for(t: float, params: EvalParams = _DEFAULT) -> int:
    """Euler-Maclaurin truncation point N for height t."""
    return max(2, math.ceil(params.beta * (abs(t) + 10.0)))


def _guard_pole(s: ComplexPoint, params: EvalParams) -> None:
    if math.hypot(s.sigma - 1.0, s.t) < params.pole_radius:
        raise PoleError(f"s = ({s.sigma}, {s.t}) is within {params.pole_radius} of the pole at 1")


def _precision_gate(bound: float, value: complex, params: EvalParams, what: str) -> None:
    if not math.isfinite(bound) or bound > params.precision_target * max(1.0, abs(value)):
        raise PrecisionError(
            f"{what}: truncation bound {bound:.3e} exceeds target "
            f"{params.precision_target:.1e} (scale {max(1.0, abs(value)):.3e})"
        )


def eval_dirichlet(s: ComplexPoint, terms: int, params: EvalParams = _DEFAULT) -> EvalResult:
    """Partial Dirichlet sum over n = 1..terms, with integral tail bound."""
    _check_point(s)
    if s.sigma <= 1.0:
        raise DomainError(f"Dirichlet sum needs sigma > 1, got {s.sigma}")
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    kern = backend.get_kernels()
    ln_n = backend.ln_values(max(terms, 2))
    re, im = kern.dirichlet_sum(s.sigma, s.t, terms, ln_n)
    bound = terms ** (1.0 - s.sigma) / (s.sigma - 1.0)
    return EvalResult(complex(re, im), bound)


def eval_zeta(s: ComplexPoint, params: EvalParams = _DEFAULT) -> EvalResult:
    """zeta(s) by Euler-Maclaurin continuation."""
    _check_point(s)
    _guard_pole(s, params)
    kern = backend.get_kernels()
    n = n_trunc_for(s.t, params)
    ln_n = backend.ln_values(n)
    re, im, bound = kern.zeta_em(s.sigma, s.t, n, params.correction_terms, ln_n)
    value = complex(re, im)
    _precision_gate(bound, value, params, "zeta")
    return EvalResult(value, bound)


def eval_zeta_deriv(s: ComplexPoint, params: EvalParams = _DEFAULT) -> EvalResult:
    """zeta'(s) by term-wise differentiation of the same continuation."""
    _check_point(s)
    _guard_pole(s, params)
    kern = backend.get_kernels()
    n = n_trunc_for(s.t, params)
    ln_n = backend.ln_values(n)
    _, _, dre, dim, _, dbound = kern.zeta_em_with_deriv(
        s.sigma, s.t, n, params.correction_terms, ln_n
    )
    value = complex(dre, dim)
    _precision_gate(dbound, value, params, "zeta'")
    return EvalResult(value, dbound)


def eval_zeta_with_deriv(
    s: ComplexPoint, params: EvalParams = _DEFAULT
) -> tuple[EvalResult, EvalResult]:
    """(zeta(s), zeta'(s)) in one fused kernel pass."""
    _check_point(s)
    _guard_pole(s, params)
    kern = backend.get_kernels()
    n = n_trunc_for(s.t, params)
    ln_n = backend.ln_values(n)
    zre, zim, dre, dim, zbound, dbound = kern.zeta_em_with_deriv(
        s.sigma, s.t, n, params.correction_terms, ln_n
    )
    z = complex(zre, zim)
    dz = complex(dre, dim)
    _precision_gate(zbound, z, params, "zeta")
    _precision_gate(dbound, dz, params, "zeta'")
    return EvalResult(z, zbound), EvalResult(dz, dbound)


def phase(s: ComplexPoint, params: EvalParams = _DEFAULT) -> PhaseValue:
    """Principal argument of zeta(s); refused too close to a zero."""
    res = eval_zeta(s, params)
    if abs(res.value) <= params.zero_floor:
        raise NearZeroError(
            f"|zeta| = {abs(res.value):.3e} at ({s.sigma}, {s.t}) is below the "
            f"phase floor {params.zero_floor:.1e}"
        )
    return PhaseValue(math.atan2(res.value.imag, res.value.real))


def rs_theta(t: float, params: EvalParams = _DEFAULT) -> float:
    """Riemann-Siegel rotation angle (asymptotic, accurate for t >= 8)."""
    if t <= 0.0:
        raise DomainError(f"rs_theta needs t > 0, got {t}")
    return backend.get_kernels().rs_theta_val(t)


def hardy_z(t: float, params: EvalParams = _DEFAULT) -> float:
    """Real rotation of zeta on the critical line: Re(e^{i theta} zeta)."""
    if t <= 0.0:
        raise DomainError(f"hardy_z needs t > 0, got {t}")
    kern = backend.get_kernels()
    n = n_trunc_for(t, params)
    return kern.hardy_z(t, n, params.correction_terms, backend.ln_values(n))


def _ln_sin(z: complex) -> complex:
    """log(sin z), stable for large |Im z| (never over/underflows)."""
    if z.imag > 0.0:
        # sin z = (i/2) e^{-iz} (1 - e^{2iz}), with |e^{2iz}| < 1
        return complex(-LN2, 0.5 * math.pi) - 1j * z + _log1p_c(-cmath.exp(2j * z))
    if z.imag < 0.0:
        return _ln_sin(z.conjugate()).conjugate()
    return cmath.log(cmath.sin(z))


def _log1p_c(w: complex) -> complex:
    if abs(w) < 0.5:
        # series keeps precision where exp(2iz) is tiny
        total = complex(0.0)
        term = complex(1.0)
        for k in range(1, 20):
            term *= -w
            total -= term / k
            if abs(term) < 1e-20:
                break
        return total
    return cmath.log(1.0 + w)


def log_chi(s: ComplexPoint) -> complex:
    """log of the functional-equation factor chi: zeta(s) = chi(s) zeta(1-s)."""
    sc = s.as_complex()
    arg = 0.5 * math.pi * sc
    return (
        sc * LN2
        + (sc - 1.0) * math.log(math.pi)
        + _ln_sin(arg)
        + loggamma(1.0 - sc)
    )


def reflected_zeta(s: ComplexPoint, params: EvalParams = _DEFAULT) -> EvalResult:
    """chi(s) * zeta(1 - s): the functional-equation image of zeta(s)."""
    _check_point(s)
    one_minus = ComplexPoint(1.0 - s.sigma, -s.t)
    if s.t == 0.0:
        half_pi_sin = cmath.sin(0.5 * math.pi * s.sigma)
        if abs(half_pi_sin) < 1e-12:
            raise DomainError(
                f"chi factor degenerate at sigma = {s.sigma} (sine zero)"
            )
    other = eval_zeta(one_minus, params)
    chi = cmath.exp(log_chi(s))
    return EvalResult(chi * other.value, abs(chi) * other.abs_error_bound)


def functional_eq_residual(s: ComplexPoint, params: EvalParams = _DEFAULT) -> float:
    """|zeta(s) - chi(s) zeta(1-s)| / |zeta(s)| — continuation cross-check."""
    direct = eval_zeta(s, params)
    if abs(direct.value) <= params.zero_floor:
        raise NearZeroError(
            f"cannot normalize residual: |zeta| <= {params.zero_floor:.1e}"
        )
    mirror = reflected_zeta(s, params)
    return abs(direct.value - mirror.value) / abs(direct.value)


def asymptotic_im(s: ComplexPoint) -> float:
    """Im of the two-term Dirichlet approximation: Im(2^{-s})."""
    return -(2.0 ** -s.sigma) * math.sin(s.t * LN2)


def strip_asymptote(m: int, kind: str) -> float:
    """Large-sigma height of strip m's boundary or primary contour."""
    if m < 1:
        raise DomainError(f"strip number must be >= 1, got {m}")
    if kind == "boundary":
        return 2.0 * m * math.pi / LN2
    if kind == "primary":
        return (2.0 * m + 1.0) * math.pi / LN2
    raise ConfigError(f"kind must be 'boundary' or 'primary', got {kind!r}")
