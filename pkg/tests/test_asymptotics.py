import math
import warnings

import pytest

from saddlecoef.asymptotics import (
    ESTIMATE_CSV_COLUMNS,
    EstimateMethod,
    closed_form_q,
    estimate,
    euler_maclaurin_logf,
    log_f,
)
from saddlecoef.moments import RadialParam
from saddlecoef.series import FactorFamily, expand_product

DISTINCT = FactorFamily.distinct()
NS = (100, 400, 1600, 6400)

# ln prod(1 + e^{-rk}), mpmath at 30 digits
LOG_F_01 = 7.882263410627826
LOG_F_03 = 2.4074831878004047
# exp(pi/sqrt 3) / (4 * 3^{1/4})
CLOSED_AT_1 = 1.1651524431509388
# exact q(n) over estimate, frozen from the DP oracle run
RATIOS = {
    "closed": (0.98235, 0.99137, 0.99573, 0.99788),
    "general": (0.97895, 0.98957, 0.99481, 0.99741),
    "equivalents": (0.97865, 0.98949, 0.99479, 0.99741),
}


@pytest.fixture(scope="module")
def exact_q():
    return expand_product(DISTINCT, max(NS)).coeffs


def test_log_f_against_high_precision():
    assert log_f(DISTINCT, RadialParam.from_r(0.1)) == pytest.approx(LOG_F_01, rel=1e-13)
    assert log_f(DISTINCT, RadialParam.from_r(0.3)) == pytest.approx(LOG_F_03, rel=1e-13)


def test_log_f_custom_equals_truncated_product():
    fam = FactorFamily.custom([[1, 1], [1, 0, 2]])
    t = math.exp(-0.4)
    assert log_f(fam, RadialParam.from_r(0.4)) == pytest.approx(
        math.log((1 + t) * (1 + 2 * t * t)), rel=1e-14
    )


def test_log_f_geometric_against_partition_series():
    # sum_n p(n) t^n with exact p(n)
    p = expand_product(FactorFamily.geometric(), 400).coeffs
    t = math.exp(-0.5)
    direct = math.log(math.fsum(c * t**n for n, c in enumerate(p)))
    assert log_f(FactorFamily.geometric(), RadialParam.from_r(0.5)) == pytest.approx(
        direct, rel=1e-12
    )


def test_euler_maclaurin_expansion():
    assert euler_maclaurin_logf(1.0) == pytest.approx(0.475894, abs=1e-6)
    for rho in (0.1, 0.01):
        gap = abs(euler_maclaurin_logf(rho) - log_f(DISTINCT, RadialParam.from_r(rho)))
        assert gap <= rho
    with pytest.warns(RuntimeWarning):
        euler_maclaurin_logf(2.0)
    with pytest.raises(ValueError):
        euler_maclaurin_logf(0.0)


def test_closed_form_small_n():
    assert closed_form_q(1).estimate == pytest.approx(CLOSED_AT_1, rel=1e-14)


@pytest.mark.parametrize("method", ["closed", "general", "equivalents"])
def test_ratio_goldens(method, exact_q):
    ratios = []
    for n, golden in zip(NS, RATIOS[method]):
        est = estimate(DISTINCT, n, method)
        ratio = math.exp(math.log(exact_q[n]) - est.log_estimate)
        assert ratio == pytest.approx(golden, abs=2e-5)
        ratios.append(abs(ratio - 1))
    assert all(b < a for a, b in zip(ratios, ratios[1:]))


@pytest.mark.parametrize("method", list(EstimateMethod))
def test_components_reassemble(method):
    est = estimate(DISTINCT, 500, method)
    assert est.reconstructed() == pytest.approx(est.log_estimate, rel=1e-13)


def test_equivalents_carry_euler_maclaurin_side_value():
    est = estimate(DISTINCT, 10**4, "equivalents")
    em = est.components.log_f_euler_maclaurin
    assert em is not None and abs(em - est.components.log_f) < est.saddle.rp.r


def test_general_and_equivalents_agree_at_large_n():
    g = estimate(DISTINCT, 10**4, "general").log_estimate
    e = estimate(DISTINCT, 10**4, "equivalents").log_estimate
    assert abs(g - e) < 1e-4


def test_geometric_general_estimate_tracks_partition_numbers():
    p = expand_product(FactorFamily.geometric(), 1000).coeffs
    r100 = math.exp(math.log(p[100]) - estimate(FactorFamily.geometric(), 100, "general").log_estimate)
    r1000 = math.exp(math.log(p[1000]) - estimate(FactorFamily.geometric(), 1000, "general").log_estimate)
    assert r100 == pytest.approx(0.98481, abs=1e-4)
    assert abs(r1000 - 1) < abs(r100 - 1) < 0.02


def test_non_distinct_family_rejects_closed_methods():
    with pytest.raises(ValueError):
        estimate(FactorFamily.geometric(), 100, "closed")


def test_huge_estimate_stays_in_log_space():
    est = closed_form_q(10**7)
    assert math.isfinite(est.log_estimate)
    assert est.estimate == math.inf
    row = est.csv_row()
    assert len(row) == len(ESTIMATE_CSV_COLUMNS) and row[3] == ""
