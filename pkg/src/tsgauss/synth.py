"""Seeded synthetic processes with known Gaussianity status, and a Monte Carlo harness.

Every generator is a pure function of its arguments and the RNG it is given.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import signal, special, stats

from . import kernels
from .errors import NonstationaryCoefficients
from .outcome import TestOutcome
from .series import TimeSeries

KINDS = ("IidGaussian", "GaussianARMA", "CenteredExponential", "CopulaMarkovGaussianMarginal")

COPULA_BURN_IN = 100


def _max_root_modulus(coeffs):
    """Largest root modulus of ``z^p - c_1 z^(p-1) - ... - c_p``."""
    if len(coeffs) == 0:
        return 0.0
    return float(np.max(np.abs(np.roots(np.concatenate([[1.0], -np.asarray(coeffs, dtype=float)])))))


def _series(values, station_id):
    return TimeSeries.from_values(values, station_id=station_id)


def gaussian_arma(n, ar_coeffs=(), ma_coeffs=(), rng=None, station_id="arma"):
    """Gaussian ARMA(p, q) with unit innovation variance.

    ``x_t = sum ar_i x_{t-i} + e_t + sum ma_j e_{t-j}``. The first
    ``max(100, 10 * memory)`` samples are discarded, where memory is the
    e-folding time of the slowest AR root plus p + q.
    """
    rng = np.random.default_rng(rng)
    ar = np.asarray(ar_coeffs, dtype=float)
    ma = np.asarray(ma_coeffs, dtype=float)
    r_ar = _max_root_modulus(ar)
    if r_ar >= 1.0:
        raise NonstationaryCoefficients(f"AR root modulus {r_ar:.4g} >= 1")
    if _max_root_modulus(-ma) >= 1.0:
        raise NonstationaryCoefficients("MA polynomial is not invertible")
    memory = ar.size + ma.size
    if r_ar > 0:
        memory += math.ceil(-1.0 / math.log(r_ar))
    burn = max(100, 10 * memory)
    e = rng.standard_normal(n + burn)
    x = signal.lfilter(np.concatenate([[1.0], ma]), np.concatenate([[1.0], -ar]), e)
    return _series(x[burn:], station_id)


def iid_gaussian(n, rng=None, station_id="iid"):
    rng = np.random.default_rng(rng)
    return _series(rng.standard_normal(n), station_id)


def centered_exponential(n, rng=None, station_id="exp"):
    rng = np.random.default_rng(rng)
    return _series(rng.exponential(size=n) - 1.0, station_id)


def clayton_conditional_inverse(u, w, theta):
    """Solve ``C(v | u) = w`` for the Clayton copula with parameter ``theta > 0``."""
    return ((w ** (-theta / (1.0 + theta)) - 1.0) * u ** (-theta) + 1.0) ** (-1.0 / theta)


def copula_markov_gaussian_marginal(n, theta, rng=None, station_id="copula"):
    """Stationary Markov chain with Clayton transitions and exact N(0, 1) marginals.

    Uniforms follow ``u_t = C^{-1}(w_t | u_{t-1})`` from a uniform start, then
    pass through the Gaussian quantile function. Every ``x_t`` is N(0, 1) but
    pairs ``(x_t, x_{t+1})`` are not bivariate Gaussian.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    rng = np.random.default_rng(rng)
    u0 = rng.uniform()
    w = rng.uniform(size=n + COPULA_BURN_IN)
    u = kernels.clayton_chain(u0, w, theta)[COPULA_BURN_IN:]
    tiny = np.finfo(float).eps / 4
    return _series(special.ndtri(np.clip(u, tiny, 1.0 - tiny)), station_id)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator {self.kind!r}")
        if self.kind == "CopulaMarkovGaussianMarginal" and self.params.get("theta", 2.0) <= 0:
            raise ValueError("theta must be positive")

    def draw(self, rng=None, station_id=None):
        rng = np.random.default_rng(self.seed if rng is None else rng)
        sid = station_id or self.kind
        if self.kind == "IidGaussian":
            return iid_gaussian(self.n, rng, sid)
        if self.kind == "GaussianARMA":
            return gaussian_arma(self.n, self.params.get("ar", ()), self.params.get("ma", ()), rng, sid)
        if self.kind == "CenteredExponential":
            return centered_exponential(self.n, rng, sid)
        return copula_markov_gaussian_marginal(self.n, self.params.get("theta", 2.0), rng, sid)


def replicate_rng(seed, index):
    """Independent stream for replicate ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def binomial_band(p0, replicates, level=0.99):
    """Central ``level`` interval for the rejection rate of a test of exact size ``p0``."""
    tail = (1.0 - level) / 2.0
    lo = stats.binom.ppf(tail, replicates, p0)
    hi = stats.binom.ppf(1.0 - tail, replicates, p0)
    return lo / replicates, hi / replicates


def clopper_pearson(k, n, level=0.99):
    tail = (1.0 - level) / 2.0
    lo = 0.0 if k == 0 else stats.beta.ppf(tail, k, n - k + 1)
    hi = 1.0 if k == n else stats.beta.ppf(1.0 - tail, k + 1, n - k)
    return float(lo), float(hi)


@dataclass(frozen=True)
class CalibrationResult:
    rejections: int
    replicates: int
    alpha: float
    ci: tuple

    @property
    def rate(self):
        return self.rejections / self.replicates

    @property
    def std_error(self):
        r = self.rate
        return math.sqrt(r * (1.0 - r) / self.replicates)


def _pvalue(result):
    return result.p_value if isinstance(result, TestOutcome) else float(result)


def _one(args):
    test, gen, seed, i = args
    rng = replicate_rng(seed, i)
    series = gen.draw(rng)
    return _pvalue(test(series, rng))


def replicate_pvalues(test, gen, replicates, seed=None, workers=1):
    """p-values of ``test(series, rng)`` over seeded replicates of ``gen``.

    Replicate i uses the stream ``replicate_rng(seed, i)`` for both the draw
    and the test, so results do not depend on ``workers``.
    """
    seed = gen.seed if seed is None else seed
    jobs = [(test, gen, seed, i) for i in range(replicates)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return np.array(list(pool.map(_one, jobs, chunksize=8)))
    return np.array([_one(j) for j in jobs])


def calibration(test, gen, replicates, alpha=0.05, seed=None, workers=1):
    """Empirical rejection rate ``P(p < alpha)`` with an exact 99% Clopper-Pearson interval."""
    if replicates < 100:
        raise ValueError("calibration needs at least 100 replicates")
    p = replicate_pvalues(test, gen, replicates, seed, workers)
    k = int(np.sum(p < alpha))
    return CalibrationResult(k, replicates, alpha, clopper_pearson(k, replicates))
