"""Benjamini-Yekutieli step-up adjustment for p-values under arbitrary dependence."""

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInput, OutOfRange


def harmonic(m):
    return float(sum(1.0 / j for j in range(1, m + 1)))


@dataclass(frozen=True)
class FdrResult:
    raw: tuple
    adjusted: tuple
    m: int
    harmonic_factor: float
    capped: bool = field(default=False)

    @property
    def combined(self):
        """Single per-family value: the adjusted value of the smallest raw p-value."""
        return min(self.adjusted)

    def reject_at(self, alphas=(0.01, 0.05, 0.10)):
        return {a: self.combined < a for a in alphas}


def by_adjust(raw, dependent=True, cap=False):
    """Step-up adjusted p-values ``min_{j>=i} p_(j) m c(m) / j``.

    ``c(m) = sum_{j<=m} 1/j`` when ``dependent`` (Benjamini-Yekutieli), 1 otherwise
    (Benjamini-Hochberg). Values are left uncapped unless ``cap``.
    """
    p = np.asarray(raw, dtype=float)
    if p.size == 0:
        raise EmptyInput("no p-values")
    if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
        raise OutOfRange("p-values must lie in [0, 1]")
    m = p.size
    c = harmonic(m) if dependent else 1.0
    order = np.argsort(p, kind="stable")
    scaled = p[order] * m * c / np.arange(1, m + 1)
    adj_sorted = np.minimum.accumulate(scaled[::-1])[::-1]
    if cap:
        adj_sorted = np.minimum(adj_sorted, 1.0)
    adjusted = np.empty(m)
    adjusted[order] = adj_sorted
    return FdrResult(tuple(float(v) for v in p), tuple(float(v) for v in adjusted), m, c, cap)


def fdr_verdict(result, alpha=0.05):
    """True when the family is rejected: the smallest adjusted value is below ``alpha``."""
    return result.combined < alpha
