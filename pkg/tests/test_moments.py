import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saddlecoef.errors import TruncationError
from saddlecoef.moments import (
    MOMENT_CSV_COLUMNS,
    RadialParam,
    aggregate_moments,
    factor_law,
    gamma3_constant,
    m1,
    moment_tail_bound,
    sigma1_sq,
)
from saddlecoef.series import FactorFamily

DISTINCT = FactorFamily.distinct()
GEOMETRIC = FactorFamily.geometric()
R_GRID = (0.5, 0.2, 0.1, 0.05, 0.02)

# mpmath nsum at 40 digits, r = 0.1
M_AT_01 = 82.20503667574465515695
SIGMA2_AT_01 = 1644.934066848226436472
GAMMA3_AT_01 = 49924.65174765012635562
# 2 ln 2 + 3 zeta(3), the closed form of the alternating series
GAMMA3_C = 4.992465070598673475


def test_radial_param_pair():
    rp = RadialParam.from_r(0.1)
    assert rp.t == math.exp(-0.1)
    assert abs(rp.r + math.log(rp.t)) <= 1e-15 * rp.r + 2.0**-52
    assert RadialParam.from_t(0.5).r == pytest.approx(math.log(2), rel=1e-15)
    with pytest.raises(ValueError):
        RadialParam(0.1, 0.5)
    with pytest.raises(ValueError):
        RadialParam.from_r(0.0)


def test_two_point_law_at_half():
    law = factor_law(DISTINCT, 1, RadialParam.from_t(0.5))
    assert law.mean == pytest.approx(1 / 3, rel=1e-14)
    assert law.variance == pytest.approx(2 / 9, rel=1e-14)
    assert law.support == ((0, pytest.approx(2 / 3)), (1, pytest.approx(1 / 3)))


def test_law_collapses_as_t_goes_to_zero():
    law = factor_law(DISTINCT, 1, RadialParam.from_r(60.0))
    assert law.mean < 1e-25


def test_third_absolute_moment_closed_form():
    mp.mp.dps = 30
    expected = 27 * (mp.exp(-0.9) + mp.exp(-0.3)) / (1 + mp.exp(-0.3)) ** 4
    law = factor_law(DISTINCT, 3, RadialParam.from_r(0.1))
    assert law.abs_central_3 == pytest.approx(float(expected), rel=1e-13)


@pytest.mark.parametrize("k, r", [(1, 0.3), (2, 0.3), (5, 0.05), (40, 0.01)])
def test_geometric_law_against_support(k, r):
    law = factor_law(GEOMETRIC, k, RadialParam.from_r(r))
    q = math.exp(-r * k)
    j = np.arange(0, int(80 / (r * k)) + 50)
    probs = (1 - q) * q**j
    vals = k * j
    mean = float(np.sum(vals * probs))
    assert sum(p for _, p in law.support) == pytest.approx(1.0, abs=1e-12)
    assert law.mean == pytest.approx(mean, rel=1e-10)
    assert law.variance == pytest.approx(float(np.sum((vals - mean) ** 2 * probs)), rel=1e-10)
    assert law.abs_central_3 == pytest.approx(
        float(np.sum(np.abs(vals - mean) ** 3 * probs)), rel=1e-9
    )


def test_custom_law_is_normalised():
    fam = FactorFamily.custom([[1, 2, 1]])
    law = factor_law(fam, 1, RadialParam.from_r(0.0001))
    # at t -> 1 the law tends to binomial(2, 1/2)
    assert [p for _, p in law.support] == pytest.approx([0.25, 0.5, 0.25], abs=1e-4)
    assert law.mean == pytest.approx(1.0, abs=1e-4)


def test_aggregate_at_r_01_against_high_precision_sums():
    s = aggregate_moments(DISTINCT, RadialParam.from_r(0.1), tol=1e-12)
    assert s.m == pytest.approx(M_AT_01, rel=1e-12)
    assert s.sigma2 == pytest.approx(SIGMA2_AT_01, rel=1e-12)
    assert s.gamma3 == pytest.approx(GAMMA3_AT_01, rel=1e-12)
    assert s.tail_bound <= 1e-12
    assert abs(s.m - 82.2467) <= 0.01 / 0.1
    assert s.sigma2 * 0.1**3 == pytest.approx(math.pi**2 / 6, rel=0.05)


def test_aggregate_stable_under_tighter_tolerance():
    rp = RadialParam.from_r(0.1)
    a = aggregate_moments(DISTINCT, rp, tol=1e-12)
    b = aggregate_moments(DISTINCT, rp, tol=1e-14)
    assert b.truncation_k >= a.truncation_k
    assert a.m == pytest.approx(b.m, rel=1e-12)


def test_high_precision_oracle_matches_frozen_values():
    mp.mp.dps = 40
    r = mp.mpf("0.1")
    m = mp.nsum(lambda k: k * mp.exp(-r * k) / (1 + mp.exp(-r * k)), [1, mp.inf])
    assert float(m) == pytest.approx(M_AT_01, rel=1e-15)


def test_truncation_cap():
    with pytest.raises(TruncationError):
        aggregate_moments(DISTINCT, RadialParam.from_r(1e-7), tol=1e-12, k_cap=10**6)


@settings(max_examples=40, deadline=None)
@given(
    r=st.floats(min_value=0.01, max_value=3.0),
    p=st.integers(min_value=0, max_value=3),
    K=st.integers(min_value=0, max_value=400),
)
def test_tail_bound_dominates_true_tail(r, p, K):
    k = np.arange(K + 1, K + 1 + int(200 / r) + 200, dtype=float)
    true_tail = math.fsum(k**p * np.exp(-r * k))
    assert true_tail <= moment_tail_bound(p, K, r) * (1 + 1e-12)


families = st.sampled_from(
    [DISTINCT, GEOMETRIC, FactorFamily.custom([[1, 1], [1, 0, 3, 0, 1], [1, 0, 0, 2]])]
)


@settings(max_examples=30, deadline=None)
@given(family=families, r=st.floats(min_value=0.02, max_value=4.0))
def test_summary_invariants(family, r):
    s = aggregate_moments(family, RadialParam.from_r(r))
    assert s.m > 0 and s.sigma2 > 0 and s.gamma3 > 0
    assert 0 < s.sup_var_ratio <= 1
    assert s.tail_bound <= 1e-12


def test_geometric_aggregate_against_direct_sum():
    r = 0.2
    s = aggregate_moments(GEOMETRIC, RadialParam.from_r(r))
    k = np.arange(1, 2000, dtype=float)
    q = np.exp(-r * k)
    assert s.m == pytest.approx(math.fsum(k * q / (1 - q)), rel=1e-12)
    assert s.sigma2 == pytest.approx(math.fsum(k * k * q / (1 - q) ** 2), rel=1e-12)


def test_single_factor_has_full_variance_share():
    s = aggregate_moments(FactorFamily.custom([[1, 1]]), RadialParam.from_r(0.7))
    assert s.sup_var_ratio == 1.0
    assert s.truncation_k == 1 and s.tail_bound == 0.0


def test_mean_strictly_increasing_in_t():
    ts = np.round(np.arange(0.1, 1.0, 0.01), 2)
    means = [aggregate_moments(DISTINCT, RadialParam.from_t(t)).m for t in ts]
    assert all(b > a for a, b in zip(means, means[1:]))


def test_equivalent_normalisations_converge():
    dev_m, dev_s = [], []
    for r in R_GRID:
        s = aggregate_moments(DISTINCT, RadialParam.from_r(r))
        dev_m.append(abs(s.m * r * r * 12 / math.pi**2 - 1))
        dev_s.append(abs(s.sigma2 * r**3 * 6 / math.pi**2 - 1))
        assert r * abs(s.m - m1(RadialParam.from_r(r))) <= 0.05
    assert all(b < a for a, b in zip(dev_m, dev_m[1:]))
    # the variance already agrees with its equivalent to rounding level
    assert max(dev_s) < 1e-12


def test_liapounov_ratio_rate_and_variance_dominance():
    C3 = gamma3_constant().C3
    for r in R_GRID:
        s = aggregate_moments(DISTINCT, RadialParam.from_r(r))
        scaled = s.gamma3 / s.sigma2**1.5 / math.sqrt(r)
        assert scaled == pytest.approx(C3, rel=0.10)
        assert s.sup_var_ratio <= (4 * math.exp(-2) / r**2) / s.sigma2
    sups = [aggregate_moments(DISTINCT, RadialParam.from_r(r)).sup_var_ratio for r in R_GRID]
    assert all(b < a for a, b in zip(sups, sups[1:]))


def test_closed_form_equivalents():
    assert m1(RadialParam.from_r(1.0)) == pytest.approx(0.8224670334241132, rel=1e-15)
    assert sigma1_sq(RadialParam.from_r(0.1)) == pytest.approx(1644.934066848226, rel=1e-13)
    big = RadialParam.from_r(700.0)
    assert m1(big) == pytest.approx(math.pi**2 / (12 * 700.0**2), rel=1e-15)
    assert sigma1_sq(big) < 1e-8


def test_gamma3_constant_against_series_oracle():
    mp.mp.dps = 30
    series = 6 * mp.nsum(
        lambda j: (-1) ** j * mp.binomial(j + 3, 3) * (1 / (j + 3) ** 4 + 1 / (j + 1) ** 4),
        [0, mp.inf],
    )
    assert float(series) == pytest.approx(GAMMA3_C, rel=1e-15)
    g = gamma3_constant()
    assert g.C > 0
    assert g.C == pytest.approx(GAMMA3_C, abs=1e-10)
    assert g.C3 == pytest.approx(GAMMA3_C / (math.pi**2 / 6) ** 1.5, rel=1e-10)


def test_gamma3_scales_like_C_over_r4():
    C = gamma3_constant().C
    devs = []
    for r in (0.2, 0.1, 0.05):
        s = aggregate_moments(DISTINCT, RadialParam.from_r(r))
        devs.append(abs(s.gamma3 / (C / r**4) - 1))
    assert all(d < 1e-2 for d in devs)


def test_csv_row_schema():
    s = aggregate_moments(DISTINCT, RadialParam.from_r(0.1))
    header, row = s.to_csv().splitlines()
    assert header.split(",") == list(MOMENT_CSV_COLUMNS)
    fields = row.split(",")
    assert len(fields) == len(MOMENT_CSV_COLUMNS)
    assert float(fields[2]) == s.m and int(fields[6]) == s.truncation_k
