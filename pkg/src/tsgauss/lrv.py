"""Long-run (zero-frequency spectral) covariance estimation."""

import numpy as np

from . import kernels


def andrews_bandwidth(z):
    """Bartlett bandwidth from AR(1) plug-in fits to each column of ``z``.

    Andrews (1991) data-dependent rule ``1.1447 (alpha n)^(1/3)``.
    """
    z = np.atleast_2d(np.asarray(z, dtype=float).T).T
    n = z.shape[0]
    num = den = 0.0
    for col in z.T:
        y, ylag = col[1:], col[:-1]
        denom = ylag @ ylag
        if denom <= 0:
            continue
        rho = float(np.clip((ylag @ y) / denom, -0.97, 0.97))
        s2 = float(np.mean((y - rho * ylag) ** 2))
        num += 4.0 * rho**2 * s2**2 / ((1 - rho) ** 6 * (1 + rho) ** 2)
        den += s2**2 / (1 - rho) ** 4
    if den == 0:
        return 0
    alpha = num / den
    return int(min(np.floor(1.1447 * (alpha * n) ** (1.0 / 3.0)), n - 1))


def _var1(z):
    z0, z1 = z[:-1], z[1:]
    a = np.linalg.lstsq(z0, z1, rcond=None)[0].T
    u, s, vt = np.linalg.svd(a)
    if s.max() > 0.97:
        a = u @ np.diag(np.minimum(s, 0.97)) @ vt
    return a, z1 - z0 @ a.T


def long_run_covariance(z, bandwidth=None, prewhiten=True):
    """Bartlett long-run covariance of the columns of ``z`` after demeaning.

    With ``prewhiten`` a VAR(1) filter is fitted first and its effect undone
    afterwards (Andrews-Monahan), which cuts the small-sample bias for
    slowly decaying autocorrelation. ``bandwidth=None`` picks it with
    :func:`andrews_bandwidth` on the (prewhitened) columns.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim == 1:
        z = z[:, None]
    z = z - z.mean(axis=0)
    if not prewhiten:
        if bandwidth is None:
            bandwidth = andrews_bandwidth(z)
        return kernels.lrcov_bartlett(z, bandwidth)
    a, e = _var1(z)
    if bandwidth is None:
        bandwidth = andrews_bandwidth(e)
    inner = kernels.lrcov_bartlett(np.ascontiguousarray(e), bandwidth)
    back = np.linalg.inv(np.eye(z.shape[1]) - a)
    out = back @ inner @ back.T
    return 0.5 * (out + out.T)
