import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats
from statsmodels.stats.diagnostic import acorr_ljungbox
from statsmodels.tsa.stattools import adfuller
from statsmodels.tsa.stattools import kpss as sm_kpss

from tsgauss.errors import DegenerateSeries, InsufficientData, LagTooLarge
from tsgauss.outcome import NON_STATIONARY, STATIONARY
from tsgauss.stationarity import (
    adf,
    default_adf_lag,
    df_tau_pvalue,
    kpss,
    kpss_pvalue,
    ljung_box,
    newey_west_bandwidth,
    phillips_perron,
    stationarity_panel,
)
from tsgauss.synth import gaussian_arma, replicate_rng


def ar1(n, phi, seed):
    return gaussian_arma(n, (phi,), (), replicate_rng(seed, 0)).values


def random_walk(n, seed):
    return np.cumsum(replicate_rng(seed, 1).standard_normal(n))


def test_ljung_box_hand_value(alternating):
    out = ljung_box(alternating, 1)
    assert out.statistic == 4.5
    assert out.p_value == pytest.approx(stats.chi2.sf(4.5, 1))
    assert out.null_hypothesis == NON_STATIONARY


def test_ljung_box_matches_statsmodels(rng):
    x = rng.normal(size=400)
    ref = acorr_ljungbox(x, lags=[10])
    out = ljung_box(x, 10)
    assert out.statistic == pytest.approx(float(ref["lb_stat"].iloc[0]), rel=1e-10)
    assert out.p_value == pytest.approx(float(ref["lb_pvalue"].iloc[0]), rel=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 15))
def test_ljung_box_monotone_in_h(seed, h):
    x = np.random.default_rng(seed).normal(size=100)
    assert 0 <= ljung_box(x, h).statistic <= ljung_box(x, h + 1).statistic


def test_ljung_box_errors():
    with pytest.raises(LagTooLarge):
        ljung_box([1.0, 2.0, 3.0], 3)
    with pytest.raises(DegenerateSeries):
        ljung_box(np.ones(20), 2)


def test_adf_matches_statsmodels_tau(rng):
    x = ar1(800, 0.7, 3)
    p = default_adf_lag(x.size)
    ref = adfuller(x, maxlag=p, regression="c", autolag=None)
    assert adf(x).statistic == pytest.approx(ref[0], rel=1e-9)


def test_pp_without_correction_is_dickey_fuller(rng):
    x = random_walk(500, 4)
    ref = adfuller(x, maxlag=0, regression="c", autolag=None)
    assert phillips_perron(x, bandwidth=0).statistic == pytest.approx(ref[0], rel=1e-9)


@pytest.mark.filterwarnings("ignore::Warning")
def test_kpss_matches_statsmodels():
    x = ar1(1000, 0.4, 5)
    l = newey_west_bandwidth(x.size)
    ref = sm_kpss(x, regression="c", nlags=l)
    assert kpss(x).statistic == pytest.approx(ref[0], rel=1e-9)
    assert kpss(x).null_hypothesis == STATIONARY


def test_df_table_interpolation():
    assert df_tau_pvalue(-5.0, 1000) == (0.01, "below")
    assert df_tau_pvalue(-1.0, 1000) == (0.10, "above")
    p, bound = df_tau_pvalue(-2.86, 1e6)
    assert bound == "exact" and p == pytest.approx(0.05)
    # halfway between the 0.05 and 0.10 columns at n = 100
    p, _ = df_tau_pvalue((-2.89 - 2.58) / 2, 100)
    assert p == pytest.approx(0.075)


def test_kpss_table_interpolation():
    assert kpss_pvalue(0.1) == (0.10, "above")
    assert kpss_pvalue(2.0) == (0.01, "below")
    assert kpss_pvalue(0.463)[0] == pytest.approx(0.05)


def test_defaults():
    assert default_adf_lag(30000) == 31
    assert newey_west_bandwidth(30000) == 16
    assert newey_west_bandwidth(5000) == 10


@pytest.mark.parametrize("test", [adf, phillips_perron, kpss])
def test_constant_series_is_degenerate(test):
    with pytest.raises(DegenerateSeries):
        test(np.full(100, 2.5))


def test_adf_insufficient_data():
    with pytest.raises(InsufficientData):
        adf(np.arange(10.0) ** 2, lag_order=4)


def test_stationary_ar1_pattern():
    x = ar1(30000, 0.5, 2021)
    assert adf(x).p_bound == "below"
    assert phillips_perron(x).p_bound == "below"
    assert ljung_box(x).p_value < 1e-6
    assert kpss(x).p_bound == "above"


@pytest.mark.slow
def test_random_walk_keeps_unit_root_null():
    adf_keep = pp_keep = kpss_rej = 0
    for s in range(50):
        x = random_walk(5000, s)
        adf_keep += adf(x).p_value >= 0.10
        pp_keep += phillips_perron(x).p_value >= 0.10
        kpss_rej += kpss(x).p_value < 0.05
    assert adf_keep >= 40
    assert pp_keep >= 40
    assert kpss_rej >= 45


def test_random_walk_panel_verdict_false():
    verdicts = [stationarity_panel(random_walk(2000, s)).verdict for s in range(20)]
    assert sum(verdicts) <= 2


def test_white_noise_panel():
    # white noise: the unit-root tests and KPSS all point to stationarity, but
    # Ljung-Box has nothing to reject, so the panel's Ljung-Box condition fails
    x = replicate_rng(9, 0).standard_normal(5000)
    panel = stationarity_panel(x)
    assert panel.adf.p_bound == "below" and panel.phillips_perron.p_bound == "below"
    assert panel.kpss.p_bound == "above"
    assert panel.verdict == panel.ljung_box.rejects(0.05)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**31), st.floats(0.01, 100), st.floats(-100, 100))
def test_affine_invariance(seed, a, b):
    x = gaussian_arma(400, (0.6,), (), np.random.default_rng(seed)).values
    for test in (adf, phillips_perron, kpss, ljung_box):
        o1, o2 = test(x), test(a * x + b)
        assert o2.statistic == pytest.approx(o1.statistic, rel=1e-6, abs=1e-8)
        assert o2.rejects() == o1.rejects()
