"""Critical-line zero location and counting."""

import pytest

import oracles
from zetastrips import (
    CriticalZero,
    DomainError,
    count_zeros_rvm,
    find_critical_zeros,
    refine_zero,
    verify_count,
)


def test_first_ten_zeros(params):
    zeros = find_critical_zeros(10.0, 50.0, params)
    assert len(zeros) == len(oracles.ZEROS_1_10)
    for got, want in zip(zeros, oracles.ZEROS_1_10):
        assert abs(got.t - want) < 1e-9, want


def test_first_three_zeros_to_published_digits(params):
    zeros = find_critical_zeros(10.0, 26.0, params)
    published = (14.134725, 21.022040, 25.010858)
    assert len(zeros) == 3
    for got, want in zip(zeros, published):
        assert round(got.t, 6) == want


def test_ordinals_are_one_based_and_contiguous(params):
    zeros = find_critical_zeros(10.0, 60.0, params)
    assert [z.ordinal for z in zeros] == list(range(1, len(zeros) + 1))


def test_ordinal_base_accounts_for_zeros_below_t_min(params):
    # starting above the first two zeros, ordinals continue the global count
    zeros = find_critical_zeros(22.0, 50.0, params)
    assert zeros[0].ordinal == 3
    assert abs(zeros[0].t - oracles.ZEROS_1_10[2]) < 1e-9


def test_empty_range(params):
    assert find_critical_zeros(15.0, 20.0, params) == []


def test_scan_domain_guards(params):
    with pytest.raises(DomainError):
        find_critical_zeros(-1.0, 30.0, params)
    with pytest.raises(DomainError):
        find_critical_zeros(30.0, 20.0, params)
    with pytest.raises(DomainError):
        find_critical_zeros(10.0, 6000.0, params)
    with pytest.raises(DomainError):
        find_critical_zeros(10.0, 50.0, params, scan_step=0.0)


def test_parallel_matches_serial_bitwise(params):
    serial = find_critical_zeros(10.0, 200.0, params, workers=1)
    parallel = find_critical_zeros(10.0, 200.0, params, workers=4)
    assert len(serial) == len(parallel)
    for a, b in zip(serial, parallel):
        assert a.t == b.t and a.ordinal == b.ordinal


def test_refine_zero_idempotent(params):
    t1 = refine_zero(14.13, params=params)
    t2 = refine_zero(t1, params=params)
    assert abs(t1 - oracles.ZEROS_1_10[0]) < 1e-10
    assert abs(t2 - t1) < 1e-12


def test_refine_zero_requires_bracket(params):
    # no sign change of Z in [17, 19]: between the first two zeros
    with pytest.raises(DomainError):
        refine_zero(18.0, halfwidth=1.0, params=params)


def test_count_zeros_rvm_values(params):
    # the smooth formula omits the fluctuation term, which stays below 1
    # at these heights, so it sits within 1 of the true counts (10, 29)
    assert abs(count_zeros_rvm(50.0, params) - 10.0) < 1.0
    assert abs(count_zeros_rvm(100.0, params) - 29.0) < 1.0


def test_count_zeros_rvm_domain(params):
    with pytest.raises(DomainError):
        count_zeros_rvm(5.0, params)
    with pytest.raises(DomainError):
        count_zeros_rvm(6000.0, params)


def test_verify_count_passes_on_clean_scan(params):
    zeros = find_critical_zeros(10.0, 100.0, params)
    chk = verify_count(zeros, 10.0, 100.0, params)
    assert chk.passed
    assert chk.found == len(zeros)
    assert abs(chk.residual) < 1.0


def test_verify_count_fails_when_zero_dropped(params):
    zeros = find_critical_zeros(10.0, 100.0, params)
    mutilated = [
        CriticalZero(t=z.t, ordinal=i + 1) for i, z in enumerate(zeros[:-3])
    ]
    chk = verify_count(mutilated, 10.0, 100.0, params)
    assert not chk.passed


def test_zero_census_500(params):
    """Denser stretch: scan of [10, 500] finds all 269 zeros below 500."""
    zeros = find_critical_zeros(10.0, 500.0, params, workers=2)
    chk = verify_count(zeros, 10.0, 500.0, params)
    assert chk.passed
    assert chk.found == 269
    assert abs(chk.residual) < 1.0
