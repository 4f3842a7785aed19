"""Gaussianity tests for the one-dimensional marginal of a dependent series.

Both tests standardise the series first, so they are invariant to positive
affine maps, and both use long-run (serial-dependence robust) variances.
"""

import numpy as np
from scipy import linalg, signal, stats

from .errors import DegenerateSeries, NonpositiveLongRunVariance, SingularCovariance
from .lrv import long_run_covariance
from .outcome import GAUSSIAN_MARGINAL, TestOutcome
from .series import _values, all_autocovariances

DEFAULT_EVAL_POINTS = (0.8, 1.6)


def _standardize(x):
    sd = x.std()
    if sd == 0 or np.ptp(x) == 0:
        raise DegenerateSeries("zero variance")
    return (x - x.mean()) / sd


def ar_sieve_autocorrelation(z, max_order=None):
    """Autocorrelations at every lag implied by an AIC-selected Yule-Walker AR fit.

    Returns an array of length ``n`` starting at lag 0.
    """
    n = z.size
    if max_order is None:
        max_order = int(10 * np.log10(n))
    max_order = max(0, min(max_order, n - 2))
    g = all_autocovariances(z)
    best_aic, phi = np.log(g[0]), np.zeros(0)
    for p in range(1, max_order + 1):
        cand = linalg.solve_toeplitz(g[:p], g[1 : p + 1])
        s2 = g[0] - cand @ g[1 : p + 1]
        if s2 <= 0:
            break
        aic = np.log(s2) + 2.0 * p / n
        if aic < best_aic:
            best_aic, phi = aic, cand
    rho = np.zeros(n)
    if phi.size == 0:
        rho[0] = 1.0
        return rho
    impulse = np.zeros(n)
    impulse[0] = 1.0
    psi = signal.lfilter([1.0], np.concatenate([[1.0], -phi]), impulse)
    nfft = 1 << int(np.ceil(np.log2(2 * n)))
    f = np.fft.rfft(psi, nfft)
    acv = np.fft.irfft(f * np.conj(f), nfft)[:n]
    return acv / acv[0]


def gaussian_ecf_covariance(rho, eval_points):
    """Long-run covariance of ``(cos(l z_t), sin(l z_t))`` for a standard Gaussian process.

    Uses ``Cov(cos a X_0, cos b X_k) = e^{-(a^2+b^2)/2} (cosh(ab rho_k) - 1)``
    and the ``sinh`` analogue for the sine parts; cosine/sine cross terms vanish.
    """
    lam = np.asarray(eval_points, dtype=float)
    k = lam.size
    out = np.zeros((2 * k, 2 * k))
    for i in range(k):
        for j in range(i, k):
            ab = lam[i] * lam[j]
            scale = np.exp(-0.5 * (lam[i] ** 2 + lam[j] ** 2))
            c = np.cosh(ab * rho) - 1.0
            s = np.sinh(ab * rho)
            out[i, j] = out[j, i] = scale * (c[0] + 2.0 * c[1:].sum())
            out[k + i, k + j] = out[k + j, k + i] = scale * (s[0] + 2.0 * s[1:].sum())
    return out


def epps(series, eval_points=DEFAULT_EVAL_POINTS, covariance="gaussian-ar", bandwidth=None):
    """Empirical characteristic function test of a Gaussian marginal.

    The real and imaginary parts of the empirical characteristic function of
    the standardised series at ``eval_points`` are compared with those of
    N(0, 1). The discrepancy is weighted by the inverse long-run covariance
    of the characteristic-function moments and projected off the directions
    spanned by the mean and variance estimates, which leaves a chi-square
    statistic with ``2 * len(eval_points) - 2`` degrees of freedom.

    ``covariance="gaussian-ar"`` evaluates the long-run covariance in closed
    form under the Gaussian null from AR-sieve autocorrelations;
    ``"bartlett"`` uses a prewhitened nonparametric estimate instead
    (``bandwidth`` then applies).

    Raises
    ------
    DegenerateSeries
        Zero-variance input.
    SingularCovariance
        The long-run covariance is not positive definite (too many or too
        close evaluation points for this ``n``).
    """
    x = _values(series)
    z = _standardize(x)
    n = z.size
    lam = np.asarray(eval_points, dtype=float)
    k = lam.size
    if k < 2:
        raise ValueError("at least two evaluation points are needed")
    arg = np.outer(z, lam)
    g = np.hstack([np.cos(arg), np.sin(arg)])
    damp = np.exp(-0.5 * lam**2)
    target = np.concatenate([damp, np.zeros(k)])
    diff = g.mean(axis=0) - target
    # derivative of the Gaussian characteristic function w.r.t. (mean, variance) at (0, 1)
    grad = np.zeros((2 * k, 2))
    grad[:k, 1] = -0.5 * lam**2 * damp
    grad[k:, 0] = lam * damp

    if covariance == "gaussian-ar":
        omega = gaussian_ecf_covariance(ar_sieve_autocorrelation(z), lam)
    elif covariance == "bartlett":
        omega = long_run_covariance(g, bandwidth)
    else:
        raise ValueError(f"unknown covariance estimator {covariance!r}")
    try:
        chol = np.linalg.cholesky(omega)
    except np.linalg.LinAlgError as exc:
        raise SingularCovariance("long-run covariance not positive definite") from exc
    if np.linalg.cond(omega) > 1e12:
        raise SingularCovariance("long-run covariance is numerically singular")
    # whitened residual of diff after removing the nuisance-parameter directions
    a = np.linalg.solve(chol, diff)
    b = np.linalg.solve(chol, grad)
    coef, *_ = np.linalg.lstsq(b, a, rcond=None)
    r = a - b @ coef
    stat = max(float(n * (r @ r)), 0.0)
    df = 2 * k - 2
    return TestOutcome("Epps", stat, float(stats.chi2.sf(stat, df)), "exact", GAUSSIAN_MARGINAL, df=df)


def _cube_quartic_sums(gam):
    f3 = gam[0] ** 3 + 2.0 * np.sum(gam[1:] ** 3)
    f4 = gam[0] ** 4 + 2.0 * np.sum(gam[1:] ** 4)
    return f3, f4


def lobato_velasco(series):
    """Skewness/kurtosis test with autocovariance-based long-run variances.

    ``n * m3^2 / (6 F3) + n * (m4 - 3 m2^2)^2 / (24 F4)`` where ``F3`` and
    ``F4`` sum the cubes and fourth powers of the sample autocovariances over
    all lags. If ``F3`` comes out nonpositive, both sums are truncated at
    ``floor(n^(1/3))`` lags. Chi-square with 2 degrees of freedom.
    """
    x = _values(series)
    z = _standardize(x)
    n = z.size
    m3 = float(np.mean(z**3))
    m4 = float(np.mean(z**4))
    gam = all_autocovariances(z)
    f3, f4 = _cube_quartic_sums(gam)
    if f3 <= 0:
        f3, f4 = _cube_quartic_sums(gam[: int(np.floor(n ** (1.0 / 3.0))) + 1])
        if f3 <= 0:
            raise NonpositiveLongRunVariance("third-moment long-run variance is not positive")
    stat = n * m3**2 / (6.0 * f3) + n * (m4 - 3.0) ** 2 / (24.0 * f4)
    return TestOutcome("LobatoVelasco", float(stat), float(stats.chi2.sf(stat, 2)), "exact", GAUSSIAN_MARGINAL, df=2)
