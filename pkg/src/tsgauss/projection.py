"""Random-projection Gaussianity test for stationary processes.

A random sequence of Dirichlet weights is drawn by stick breaking, the series
is filtered with it, and a marginal Gaussianity test is applied to the
filtered series. A non-Gaussian process with Gaussian one-dimensional
marginals generally has non-Gaussian projections, so this test has power
where the marginal tests do not.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import kernels
from .errors import SeriesTooShort, TruncationFailure
from .marginal import epps, lobato_velasco
from .multiplicity import by_adjust
from .outcome import GAUSSIAN_PROCESS, TestOutcome
from .series import TimeSeries

MARGINAL_TESTS = {"Epps": epps, "LobatoVelasco": lobato_velasco}
SIMILAR_PAIR = (100.0, 1.0)
MIXING_PAIR = (2.0, 7.0)


def default_k_max(lambda1, lambda2, epsilon=1e-10):
    """Weight cap large enough that the residual mass drops below ``epsilon``.

    ``log(residual)`` after K breaks is a sum of K iid ``log(1 - Beta)`` terms;
    the cap puts the target six standard deviations inside that sum, with a
    floor of 50.
    """
    mu = float(special.digamma(lambda2) - special.digamma(lambda1 + lambda2))
    var = float(special.polygamma(1, lambda2) - special.polygamma(1, lambda1 + lambda2))
    target = -math.log(epsilon)
    root = (6.0 * math.sqrt(var) + math.sqrt(36.0 * var + 4.0 * -mu * target)) / (2.0 * -mu)
    return max(50, math.ceil(root * root))


@dataclass(frozen=True, eq=False)
class StickWeights:
    lambda1: float
    lambda2: float
    weights: np.ndarray
    residual_mass: float
    seed: object = None

    @property
    def k(self):
        """Index of the last weight (weights are ``d_0..d_K``)."""
        return self.weights.size - 1


def stick_breaking_weights(lambda1, lambda2, rng, epsilon=1e-10, k_max=None, seed=None):
    """Break the unit stick with iid Beta(lambda1, lambda2) fractions.

    ``d_0 = b_0`` and ``d_k = (1 - d_0 - ... - d_{k-1}) b_k``. Stops at the
    first weight after which the remaining mass is below ``epsilon``.
    Exactly ``k_max + 1`` beta variates are drawn from ``rng`` per call.
    """
    if lambda1 <= 0 or lambda2 <= 0:
        raise ValueError("beta parameters must be positive")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if k_max is None:
        k_max = default_k_max(lambda1, lambda2, epsilon)
    b = np.asarray(rng.beta(lambda1, lambda2, size=k_max + 1), dtype=float)
    remaining = np.cumprod(1.0 - b)
    below = np.flatnonzero(remaining < epsilon)
    if below.size == 0:
        raise TruncationFailure(
            f"residual mass {remaining[-1]:.3g} >= {epsilon} after {k_max + 1} weights"
        )
    last = int(below[0])
    before = np.concatenate([[1.0], remaining[:last]])
    weights = before * b[: last + 1]
    return StickWeights(float(lambda1), float(lambda2), weights, float(remaining[last]), seed)


def project(series, weights):
    """``y_t = sum_{i=0}^{K} d_i x_{t-i}`` for every t with a full window (length n - K)."""
    w = weights.weights if isinstance(weights, StickWeights) else np.asarray(weights, dtype=float)
    x = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    if x.size <= w.size:
        raise SeriesTooShort(f"{x.size} samples cannot carry {w.size} weights")
    y = kernels.project(x, w)
    if isinstance(series, TimeSeries):
        return series.with_values(y)
    return y


@dataclass(frozen=True)
class RpConfig:
    lambda_pair: tuple = MIXING_PAIR
    marginal_test: str = "LobatoVelasco"
    epsilon: float = 1e-10
    k_max: int | None = None
    num_projections: int = 1

    def __post_init__(self):
        if self.marginal_test not in MARGINAL_TESTS:
            raise ValueError(f"unknown marginal test {self.marginal_test!r}")
        if self.num_projections < 1:
            raise ValueError("num_projections must be >= 1")
        l1, l2 = self.lambda_pair
        if l1 <= 0 or l2 <= 0:
            raise ValueError("beta parameters must be positive")
        object.__setattr__(self, "lambda_pair", (float(l1), float(l2)))


def rp_test_with_weights(series, weight_list, marginal_test="LobatoVelasco"):
    """Apply the marginal test to each projection and combine the p-values.

    One projection returns its p-value; several are combined by the
    Benjamini-Yekutieli adjustment and the smallest adjusted value (capped at
    one) is reported.
    """
    test = MARGINAL_TESTS[marginal_test]
    outcomes = [test(project(series, w)) for w in weight_list]
    if len(outcomes) == 1:
        o = outcomes[0]
        return TestOutcome("RandomProjection", o.statistic, o.p_value, "exact", GAUSSIAN_PROCESS, df=o.df)
    fdr = by_adjust([o.p_value for o in outcomes])
    best = int(np.argmin(fdr.adjusted))
    p = min(fdr.adjusted[best], 1.0)
    return TestOutcome("RandomProjection", outcomes[best].statistic, p, "exact", GAUSSIAN_PROCESS, df=outcomes[best].df)


def rp_test(series, cfg, rng):
    """Random-projection test of "X is a Gaussian process".

    ``rng`` is a :class:`numpy.random.Generator`; all weight sequences are drawn
    from it in order.
    """
    l1, l2 = cfg.lambda_pair
    weight_list = [
        stick_breaking_weights(l1, l2, rng, cfg.epsilon, cfg.k_max) for _ in range(cfg.num_projections)
    ]
    return rp_test_with_weights(series, weight_list, cfg.marginal_test)


def select_rp_config(epps_p, lv_p, alpha=0.05, **overrides):
    """Choose the projection parameters and marginal test from the marginal stage.

    The test with the smaller p-value is used (Lobato-Velasco on ties). If that
    p-value is below ``alpha`` the near-identity pair (100, 1) is used,
    otherwise the mixing pair (2, 7).
    """
    test = "Epps" if epps_p < lv_p else "LobatoVelasco"
    pair = SIMILAR_PAIR if min(epps_p, lv_p) < alpha else MIXING_PAIR
    return RpConfig(lambda_pair=pair, marginal_test=test, **overrides)


def expected_weight(k, lambda1, lambda2):
    """``E[d_k]`` for stick breaking with Beta(lambda1, lambda2) fractions."""
    m = lambda1 / (lambda1 + lambda2)
    return m * (1.0 - m) ** k

