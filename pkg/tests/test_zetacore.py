"""Core evaluator: values, bounds, guards, phase, functional equation."""

import cmath
import math

import numpy as np
import pytest

import oracles
from zetastrips import (
    ComplexPoint,
    DomainError,
    NearZeroError,
    PoleError,
    PrecisionError,
    asymptotic_im,
    eval_dirichlet,
    eval_zeta,
    eval_zeta_deriv,
    eval_zeta_with_deriv,
    functional_eq_residual,
    hardy_z,
    log_chi,
    phase,
    reflected_zeta,
    rs_theta,
    strip_asymptote,
)
from zetastrips.config import EvalParams

FP_SLACK = 5e-12  # roundoff allowance on top of the truncation bound


# ----------------------------------------------------------- known values


def test_zeta_2_pi_squared_over_6(params):
    r = eval_zeta(ComplexPoint(2.0, 0.0), params)
    assert abs(r.value - (math.pi**2 / 6.0)) < 1e-14
    assert r.value.imag == 0.0


def test_zeta_0_exact(params):
    r = eval_zeta(ComplexPoint(0.0, 0.0), params)
    assert r.value.real == -0.5
    # Euler-Maclaurin is exact for polynomial-degree cases
    assert r.abs_error_bound == 0.0


def test_zeta_minus_1(params):
    r = eval_zeta(ComplexPoint(-1.0, 0.0), params)
    assert abs(r.value.real - (-1.0 / 12.0)) < 1e-11


def test_zeta_known_reals(params):
    assert abs(eval_zeta(ComplexPoint(3.0, 0.0), params).value - oracles.ZETA_3) < 1e-13
    assert (
        abs(eval_zeta(ComplexPoint(0.5, 0.0), params).value - oracles.ZETA_HALF) < 1e-13
    )


def test_zeta_complex_oracles(params):
    # summation roundoff grows with the partial-sum condition number,
    # so the left-of-strip case gets a correspondingly looser tolerance
    cases = [
        (0.5, 100.0, oracles.ZETA_HALF_100I, 1e-12),
        (3.0, 1500.0, oracles.ZETA_3_1500I, 1e-12),
        (-2.5, 40.0, oracles.ZETA_M25_40I, 1e-10),
    ]
    for sigma, t, (re, im), tol in cases:
        got = eval_zeta(ComplexPoint(sigma, t), params).value
        want = complex(re, im)
        assert abs(got - want) / max(1.0, abs(want)) < tol, (sigma, t)


def test_first_zero_is_tiny(params):
    got = eval_zeta(ComplexPoint(0.5, oracles.ZEROS_1_10[0]), params).value
    assert abs(got) < 1e-12


def test_error_bound_is_honest_vs_mpmath(params):
    """abs_error_bound covers truncation; roundoff is bounded separately.

    The floating-point part scales with the condition number of the main
    partial sum, sum(n^-sigma), which dwarfs |zeta| left of the strip.
    Measured err/(eps*cond) stays below ~90; 1e-13*cond gives 5x margin.
    """
    mp = pytest.importorskip("mpmath")
    rng = np.random.default_rng(5)
    for _ in range(25):
        sigma = float(rng.uniform(-4.0, 12.0))
        t = float(rng.uniform(0.0, 1500.0))
        if abs(sigma - 1.0) < 0.1 and t < 0.1:
            continue
        r = eval_zeta(ComplexPoint(sigma, t), params)
        with mp.workdps(30):
            truth = complex(mp.zeta(mp.mpc(sigma, t)))
        err = abs(r.value - truth)
        n_terms = max(2, math.ceil(params.beta * (abs(t) + 10.0)))
        cond = sum(n ** (-sigma) for n in range(1, n_terms + 1))
        allowance = (
            r.abs_error_bound + FP_SLACK * max(1.0, abs(truth)) + 1e-13 * cond
        )
        assert err <= allowance, (sigma, t, err, r.abs_error_bound)


# ----------------------------------------------------------- guards


def test_pole_guard(params):
    with pytest.raises(PoleError):
        eval_zeta(ComplexPoint(1.0, 0.0), params)
    with pytest.raises(PoleError):
        eval_zeta(ComplexPoint(1.0 + 1e-9, 0.0), params)
    # just outside the guard radius: a huge but finite value
    r = eval_zeta(ComplexPoint(1.0 + 1e-6, 0.0), params)
    assert abs(r.value) > 1e5


def test_domain_guards(params):
    with pytest.raises(DomainError):
        eval_zeta(ComplexPoint(0.5, 5001.0), params)
    with pytest.raises(DomainError):
        eval_zeta(ComplexPoint(0.5, -5001.0), params)
    with pytest.raises(DomainError):
        eval_zeta(ComplexPoint(float("nan"), 1.0), params)
    with pytest.raises(DomainError):
        eval_zeta(ComplexPoint(0.5, float("inf")), params)


def test_precision_gate_fires_far_left():
    # with few correction terms the truncation bound exceeds the target
    weak = EvalParams(correction_terms=1, precision_target=1e-10)
    with pytest.raises(PrecisionError):
        eval_zeta(ComplexPoint(-9.0, 3000.0), weak)


# ----------------------------------------------------------- dirichlet


def test_dirichlet_domain(params):
    with pytest.raises(DomainError):
        eval_dirichlet(ComplexPoint(1.0, 5.0), 100, params)
    with pytest.raises(DomainError):
        eval_dirichlet(ComplexPoint(2.0, 5.0), 0, params)


def test_dirichlet_tail_bound_honest(params):
    s = ComplexPoint(2.0, 7.0)
    r = eval_dirichlet(s, 500, params)
    full = eval_zeta(s, params).value
    assert abs(r.value - full) <= r.abs_error_bound
    assert r.abs_error_bound < 0.003  # 500^{-1} / 1


# ----------------------------------------------------------- symmetry, fused


def test_conjugate_symmetry_bitwise(params):
    rng = np.random.default_rng(6)
    for _ in range(40):
        sigma = float(rng.uniform(-3.0, 8.0))
        t = float(rng.uniform(2.0, 2500.0))
        a = eval_zeta(ComplexPoint(sigma, t), params).value
        b = eval_zeta(ComplexPoint(sigma, -t), params).value
        assert a == b.conjugate(), (sigma, t)


def test_fused_equals_separate(params):
    # fused evaluation shares the partial sums, so summation order can
    # differ from the standalone calls by a few ulps of the largest term
    rng = np.random.default_rng(7)
    for _ in range(20):
        s = ComplexPoint(float(rng.uniform(-2, 6)), float(rng.uniform(2, 2000)))
        z, d = eval_zeta_with_deriv(s, params)
        ze = eval_zeta(s, params).value
        de = eval_zeta_deriv(s, params).value
        assert abs(z.value - ze) / max(1.0, abs(ze)) < 1e-12, s
        assert abs(d.value - de) / max(1.0, abs(de)) < 1e-12, s


# ----------------------------------------------------------- derivative


def test_derivative_oracle(params):
    got = eval_zeta_deriv(ComplexPoint(0.5, 25.0), params).value
    want = complex(*oracles.DZETA_HALF_25I)
    assert abs(got - want) < 1e-12


def test_derivative_matches_finite_difference(params):
    h = 1e-6
    for sigma, t in [(0.5, 50.0), (2.0, 300.0), (-1.0, 80.0)]:
        d = eval_zeta_deriv(ComplexPoint(sigma, t), params).value
        fd = (
            eval_zeta(ComplexPoint(sigma, t + h), params).value
            - eval_zeta(ComplexPoint(sigma, t - h), params).value
        ) / complex(0.0, 2.0 * h)
        # central-difference truncation carries |zeta'''|, large left of
        # the strip, so the agreement window is relative and modest
        assert abs(d - fd) / max(1.0, abs(d)) < 1e-6, (sigma, t)


# ----------------------------------------------------------- phase & theta


def test_phase_matches_principal_arg(params):
    s = ComplexPoint(0.5, 100.0)
    th = phase(s, params).theta
    want = cmath.phase(complex(*oracles.ZETA_HALF_100I))
    assert abs(th - want) < 1e-12
    assert -math.pi < th <= math.pi


def test_phase_near_zero_refused(params):
    with pytest.raises(NearZeroError):
        phase(ComplexPoint(0.5, oracles.ZEROS_1_10[0]), params)


def test_rs_theta_oracles(params):
    assert abs(rs_theta(100.0, params) - oracles.THETA_100) < 1e-9
    assert abs(rs_theta(1000.0, params) - oracles.THETA_1000) < 1e-9
    with pytest.raises(DomainError):
        rs_theta(0.0, params)


def test_hardy_z_identity(params):
    for t in (20.0, 150.0, 777.7, 3000.0):
        z = abs(eval_zeta(ComplexPoint(0.5, t), params).value)
        assert abs(abs(hardy_z(t, params)) - z) < 1e-10, t


def test_hardy_z_sign_change_at_zero(params):
    t0 = oracles.ZEROS_1_10[0]
    assert hardy_z(t0 - 0.01, params) * hardy_z(t0 + 0.01, params) < 0.0


# ----------------------------------------------------------- reflection


def test_functional_equation_residual_small(params):
    rng = np.random.default_rng(8)
    for _ in range(25):
        s = ComplexPoint(float(rng.uniform(0.05, 0.95)), float(rng.uniform(10, 1500)))
        assert functional_eq_residual(s, params) < 1e-8


def test_reflected_matches_direct(params):
    s = ComplexPoint(0.3, 77.0)
    direct = eval_zeta(s, params).value
    refl = reflected_zeta(s, params).value
    assert abs(direct - refl) / abs(direct) < 1e-10


def test_log_chi_consistency():
    # chi(s) * chi(1-s) = 1  =>  log chi(s) + log chi(1-s) = 0 (mod 2 pi i)
    total = log_chi(ComplexPoint(0.3, 50.0)) + log_chi(ComplexPoint(0.7, -50.0))
    k = round(total.imag / (2.0 * math.pi))
    assert abs(total.real) < 1e-10
    assert abs(total.imag - 2.0 * math.pi * k) < 1e-10


# ----------------------------------------------------------- asymptotes


def test_asymptotic_im_formula():
    assert asymptotic_im(
        ComplexPoint(8.0, math.pi / math.log(2.0))
    ) == pytest.approx(-(2.0**-8.0) * math.sin(math.pi), abs=1e-15)
    t = 5.0
    assert asymptotic_im(ComplexPoint(6.0, t)) == pytest.approx(
        -(2.0**-6.0) * math.sin(t * math.log(2.0)), rel=1e-15
    )


def test_strip_asymptote_values():
    two_pi_ln2 = 2.0 * math.pi / math.log(2.0)
    assert strip_asymptote(1, "boundary") == pytest.approx(two_pi_ln2, rel=1e-15)
    assert strip_asymptote(3, "primary") == pytest.approx(
        7.0 * math.pi / math.log(2.0), rel=1e-15
    )
    with pytest.raises(DomainError):
        strip_asymptote(0, "boundary")


# ----------------------------------------------------------- oracle audit


def test_oracles_self_check():
    """Re-derive a sample of the frozen constants from mpmath."""
    pytest.importorskip("mpmath")
    assert abs(oracles.recompute_zero(1) - oracles.ZEROS_1_10[0]) < 1e-12
    assert abs(oracles.recompute_theta(100.0) - oracles.THETA_100) < 1e-12
    z = oracles.recompute_zeta(0.5, 100.0)
    assert abs(z - complex(*oracles.ZETA_HALF_100I)) < 1e-12
