"""Unit-root, KPSS and Ljung-Box tests forming the stationarity panel.

ADF, Phillips-Perron and Ljung-Box are read with the null "non stationary";
KPSS with the null "stationary". ADF/PP/KPSS p-values come from linear
interpolation in embedded critical-value tables and are reported as bounds
outside the tabulated range.
"""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import kernels
from .errors import DegenerateSeries, InsufficientData, LagTooLarge
from .outcome import NON_STATIONARY, STATIONARY, TestOutcome
from .series import _values, autocorrelations

# Dickey-Fuller tau, regression with constant: lower-tail quantiles by sample size
DF_TAU_SIZES = np.array([25, 50, 100, 250, 500, 100000], dtype=float)
DF_TAU_PROBS = np.array([0.01, 0.025, 0.05, 0.10])
DF_TAU_CONST = np.array(
    [
        [-3.75, -3.33, -3.00, -2.63],
        [-3.58, -3.22, -2.93, -2.60],
        [-3.51, -3.17, -2.89, -2.58],
        [-3.46, -3.14, -2.88, -2.57],
        [-3.44, -3.13, -2.87, -2.57],
        [-3.43, -3.12, -2.86, -2.57],
    ]
)

# KPSS level stationarity: upper-tail critical values
KPSS_LEVEL_CRIT = np.array([0.347, 0.463, 0.574, 0.739])
KPSS_LEVEL_PROBS = np.array([0.10, 0.05, 0.025, 0.01])


def newey_west_bandwidth(n):
    return int(np.floor(4.0 * (n / 100.0) ** 0.25))


def default_adf_lag(n):
    return int(np.floor((n - 1) ** (1.0 / 3.0)))


def _check_degenerate(x):
    if np.ptp(x) == 0:
        raise DegenerateSeries("constant series")


def _ols(y, X):
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < X.shape[1]:
        raise DegenerateSeries("collinear regressors")
    resid = y - X @ beta
    dof = X.shape[0] - X.shape[1]
    s2 = resid @ resid / dof
    cov = s2 * np.linalg.inv(X.T @ X)
    return beta, np.sqrt(np.diag(cov)), resid, s2


def df_tau_pvalue(stat, nobs):
    """Interpolated p-value for a constant-only Dickey-Fuller tau statistic.

    Returns ``(p, bound)``.
    """
    crit = np.array([np.interp(nobs, DF_TAU_SIZES, DF_TAU_CONST[:, j]) for j in range(4)])
    if stat < crit[0]:
        return 0.01, "below"
    if stat > crit[-1]:
        return 0.10, "above"
    return float(np.interp(stat, crit, DF_TAU_PROBS)), "exact"


def kpss_pvalue(stat):
    if stat < KPSS_LEVEL_CRIT[0]:
        return 0.10, "above"
    if stat > KPSS_LEVEL_CRIT[-1]:
        return 0.01, "below"
    return float(np.interp(stat, KPSS_LEVEL_CRIT, KPSS_LEVEL_PROBS)), "exact"


def ljung_box(series, h=10):
    """Ljung-Box portmanteau statistic ``n(n+2) sum rho_k^2/(n-k)``, chi-square(h) tail."""
    x = _values(series)
    n = x.size
    if h < 1 or h >= n:
        raise LagTooLarge(f"h={h} must satisfy 1 <= h < n={n}")
    _check_degenerate(x)
    rho = autocorrelations(x, h)
    k = np.arange(1, h + 1)
    q = n * (n + 2) * np.sum(rho**2 / (n - k))
    return TestOutcome("LjungBox", float(q), float(stats.chi2.sf(q, h)), "exact", NON_STATIONARY, df=h)


def adf(series, lag_order=None):
    """Augmented Dickey-Fuller tau test with a constant and ``lag_order`` lagged differences."""
    x = _values(series)
    n = x.size
    _check_degenerate(x)
    p = default_adf_lag(n) if lag_order is None else int(lag_order)
    if p < 0 or n < 2 * p + 4:
        raise InsufficientData(f"n={n} too short for {p} lagged differences")
    dx = np.diff(x)
    y = dx[p:]
    cols = [np.ones(y.size), x[p:-1]]
    cols += [dx[p - i : dx.size - i] for i in range(1, p + 1)]
    beta, se, _, _ = _ols(y, np.column_stack(cols))
    tau = beta[1] / se[1]
    pv, bound = df_tau_pvalue(tau, y.size)
    return TestOutcome("ADF", float(tau), pv, bound, NON_STATIONARY, df=p)


def phillips_perron(series, bandwidth=None):
    """Phillips-Perron Z(tau) with a constant; Bartlett long-run variance of the residuals."""
    x = _values(series)
    n = x.size
    _check_degenerate(x)
    if n < 4:
        raise InsufficientData(f"n={n} too short")
    y = x[1:]
    X = np.column_stack([np.ones(n - 1), x[:-1]])
    beta, se, resid, s2 = _ols(y, X)
    nobs = y.size
    l = newey_west_bandwidth(nobs) if bandwidth is None else int(bandwidth)
    gamma0 = resid @ resid / nobs
    lam2 = kernels.lrv_bartlett(resid, l)
    if lam2 <= 0 or gamma0 <= 0:
        raise DegenerateSeries("zero residual variance")
    t_rho = (beta[1] - 1.0) / se[1]
    lam = np.sqrt(lam2)
    z_tau = np.sqrt(gamma0 / lam2) * t_rho - 0.5 * (lam2 - gamma0) / lam * (nobs * se[1] / np.sqrt(s2))
    pv, bound = df_tau_pvalue(z_tau, nobs)
    return TestOutcome("PhillipsPerron", float(z_tau), pv, bound, NON_STATIONARY, df=l)


def kpss(series, bandwidth=None):
    """KPSS level-stationarity test with a Bartlett long-run variance."""
    x = _values(series)
    n = x.size
    _check_degenerate(x)
    e = x - x.mean()
    l = newey_west_bandwidth(n) if bandwidth is None else int(bandwidth)
    lam2 = kernels.lrv_bartlett(e, l)
    if lam2 <= 0:
        raise DegenerateSeries("nonpositive long-run variance")
    s = np.cumsum(e)
    eta = (s @ s) / (n * n * lam2)
    pv, bound = kpss_pvalue(eta)
    return TestOutcome("KPSS", float(eta), pv, bound, STATIONARY, df=l)


@dataclass(frozen=True)
class StationarityPanel:
    ljung_box: TestOutcome
    adf: TestOutcome
    phillips_perron: TestOutcome
    kpss: TestOutcome
    verdict: bool

    @property
    def outcomes(self):
        return [self.adf, self.phillips_perron, self.ljung_box, self.kpss]


def stationarity_panel(series, alpha=0.05, lb_h=10):
    """Run all four tests; ``verdict`` is True when every one points to stationarity.

    That means ADF, PP and Ljung-Box reject their null at ``alpha`` and KPSS
    does not.
    """
    lb = ljung_box(series, lb_h)
    a = adf(series)
    pp = phillips_perron(series)
    k = kpss(series)
    verdict = a.rejects(alpha) and pp.rejects(alpha) and lb.rejects(alpha) and not k.rejects(alpha)
    return StationarityPanel(lb, a, pp, k, bool(verdict))
