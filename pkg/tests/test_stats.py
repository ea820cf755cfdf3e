"""Statistics: OLS, series extraction, dispersion comparisons."""

import math

import numpy as np
import pytest

from zetastrips import (
    ConfigError,
    CriticalZero,
    DegenerateError,
    DomainError,
    SeriesRow,
    Strip,
    dispersion_compare,
    linfit,
    scatter_dispersion,
    series,
)


def _normal_equations(xs, ys):
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    n = len(x)
    a = np.array([[n, x.sum()], [x.sum(), (x * x).sum()]])
    b = np.array([y.sum(), (x * y).sum()])
    intercept, slope = np.linalg.solve(a, b)
    resid = y - (intercept + slope * x)
    s2 = (resid**2).sum() / (n - 2)
    sxx = ((x - x.mean()) ** 2).sum()
    return (
        slope,
        intercept,
        math.sqrt(s2 / sxx),
        math.sqrt(s2 * (1.0 / n + x.mean() ** 2 / sxx)),
    )


# ----------------------------------------------------------- linfit


def test_linfit_exact_line():
    xs = [1.0, 2.0, 3.0, 4.0]
    fit = linfit(xs, [2.0 * x - 1.0 for x in xs])
    assert fit.slope == pytest.approx(2.0, abs=1e-14)
    assert fit.intercept == pytest.approx(-1.0, abs=1e-14)
    assert fit.slope_stderr == pytest.approx(0.0, abs=1e-13)
    assert fit.n == 4


def test_linfit_matches_normal_equations_seeded():
    rng = np.random.default_rng(20260817)
    for _ in range(20):
        n = int(rng.integers(3, 400))
        xs = rng.uniform(-50.0, 50.0, n)
        ys = rng.uniform(-5.0, 5.0, n) + 3.0 * xs
        if len(np.unique(xs)) < 2:
            continue
        fit = linfit(xs, ys)
        slope, intercept, s_se, i_se = _normal_equations(xs, ys)
        scale = max(1.0, abs(slope))
        assert abs(fit.slope - slope) / scale < 1e-10
        assert abs(fit.intercept - intercept) / max(1.0, abs(intercept)) < 1e-10
        assert abs(fit.slope_stderr - s_se) / max(1e-30, s_se) < 1e-8
        assert abs(fit.intercept_stderr - i_se) / max(1e-30, i_se) < 1e-8


def test_linfit_hypothesis_matches_normal_equations():
    hyp = pytest.importorskip("hypothesis")
    st = pytest.importorskip("hypothesis.strategies")

    @hyp.settings(max_examples=60, deadline=None)
    @hyp.given(
        st.lists(
            st.floats(min_value=-100.0, max_value=100.0),
            min_size=3,
            max_size=60,
        ),
        st.randoms(use_true_random=False),
    )
    def inner(xs, rnd):
        if max(xs) - min(xs) < 1e-6:
            return
        ys = [0.7 * x - 2.0 + rnd.uniform(-1.0, 1.0) for x in xs]
        fit = linfit(xs, ys)
        slope, intercept, _, _ = _normal_equations(xs, ys)
        assert abs(fit.slope - slope) / max(1.0, abs(slope)) < 1e-10
        assert abs(fit.intercept - intercept) / max(1.0, abs(intercept)) < 1e-10

    inner()


def test_linfit_degenerate():
    with pytest.raises(DegenerateError):
        linfit([1.0, 2.0], [1.0, 2.0])  # n < 3
    with pytest.raises(DegenerateError):
        linfit([5.0, 5.0, 5.0], [1.0, 2.0, 3.0])  # Sxx = 0
    with pytest.raises(DomainError):
        linfit([1.0, 2.0, 3.0], [1.0, 2.0])  # length mismatch


# ----------------------------------------------------------- series


def _mk_strip(m, bottom, top, n_zeros, primary_index=1):
    zs = tuple(
        CriticalZero(t=bottom + (i + 1) * (top - bottom) / (n_zeros + 1), ordinal=i + 1)
        for i in range(n_zeros)
    )
    return Strip(
        m=m,
        bottom_t=bottom,
        top_t=top,
        zeros=zs,
        primary_index=primary_index,
        measurement_sigma=0.5,
    )


@pytest.fixture()
def toy_strips():
    return [
        _mk_strip(1, 9.7, 17.8, 1),
        _mk_strip(2, 17.8, 27.7, 2),
        _mk_strip(3, 27.7, 35.4, 2),
    ]


def test_series_bottoms_rounded_vs_raw(toy_strips):
    rounded = series(toy_strips, "bottoms", rounding_emulation=True)
    raw = series(toy_strips, "bottoms", rounding_emulation=False)
    assert [r.value for r in rounded] == [10.0, 18.0, 28.0]
    assert [r.value for r in raw] == [9.7, 17.8, 27.7]
    assert [r.m for r in rounded] == [1, 2, 3]


def test_series_zeros_and_zpw(toy_strips):
    zs = series(toy_strips, "zeros")
    assert [r.value for r in zs] == [1.0, 2.0, 2.0]
    zpw = series(toy_strips, "zeros_per_width", rounding_emulation=True)
    assert zpw[0].value == pytest.approx(1.0 / 8.0)
    assert zpw[1].value == pytest.approx(2.0 / 10.0)


def test_series_primary_score(toy_strips):
    rows = series(toy_strips, "primary_score")
    assert [r.value for r in rows] == [0.5, 0.25, 0.25]


def test_series_unknown_id(toy_strips):
    with pytest.raises(ConfigError):
        series(toy_strips, "nonsense")
    with pytest.raises(DomainError):
        series([], "bottoms")


# ----------------------------------------------------------- halves


def test_dispersion_compare_basic():
    scores = [0.4, 0.5, 0.6, 0.5, 0.3, 0.5, 0.7, 0.5]
    rep = dispersion_compare(scores)
    first, second = scores[:4], scores[4:]
    assert rep.first_mean == pytest.approx(np.mean(first))
    assert rep.second_var == pytest.approx(np.var(second, ddof=1))
    assert rep.pooled_mean == pytest.approx(np.mean(scores))
    # ratio is first-half variance over second-half variance
    assert rep.variance_ratio == pytest.approx(
        np.var(first, ddof=1) / np.var(second, ddof=1)
    )


def test_dispersion_compare_odd_length():
    # odd count: the middle element goes to the second half
    rep = dispersion_compare([0.1, 0.2, 0.3, 0.4, 0.5])
    assert rep.first_mean == pytest.approx(0.15)


def test_dispersion_zero_variance_conventions():
    flat = dispersion_compare([0.5, 0.5, 0.5, 0.5])
    assert flat.variance_ratio == 1.0
    first_flat = dispersion_compare([0.5, 0.5, 0.3, 0.7])
    assert first_flat.variance_ratio == 0.0
    second_flat = dispersion_compare([0.3, 0.7, 0.5, 0.5])
    assert math.isinf(second_flat.variance_ratio)


def test_dispersion_needs_enough_scores():
    with pytest.raises(DomainError):
        dispersion_compare([0.5, 0.5, 0.5])


# ----------------------------------------------------------- scatter


def test_scatter_dispersion_detrends():
    # series A: clean linear trend + small noise; B: same trend + big noise
    rng = np.random.default_rng(99)
    ms = range(1, 101)
    a = [SeriesRow(m, 2.0 + 0.05 * m + rng.normal(0, 0.01)) for m in ms]
    b = [SeriesRow(m, 2.0 + 0.05 * m + rng.normal(0, 0.40)) for m in ms]
    rep = scatter_dispersion(a, b)
    assert rep.cv_a < rep.cv_b
    assert rep.ratio == pytest.approx(rep.cv_a / rep.cv_b)
    assert rep.ratio < 1.0


def test_scatter_dispersion_formula():
    # CV = sqrt(RSS/(n-2)) about an OLS fit in log m, over |mean level|
    rng = np.random.default_rng(7)
    ms = np.arange(1, 121)
    vals = 5.0 + 2.0 * np.log(ms) + rng.normal(0, 0.05, len(ms))
    rows = [SeriesRow(int(m), float(v)) for m, v in zip(ms, vals)]
    rep = scatter_dispersion(rows, rows)
    x = np.log(ms)
    coef = np.polyfit(x, vals, 1)
    resid = vals - np.polyval(coef, x)
    want = math.sqrt(resid @ resid / (len(ms) - 2)) / abs(vals.mean())
    assert rep.cv_a == pytest.approx(want, rel=1e-10)
    assert rep.ratio == 1.0
