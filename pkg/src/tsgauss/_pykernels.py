"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``."""

import numpy as np


def acov(x, max_lag):
    x = np.asarray(x, dtype=float)
    n = x.size
    d = x - x.mean()
    if max_lag > 32:
        nfft = 1 << int(np.ceil(np.log2(2 * n)))
        f = np.fft.rfft(d, nfft)
        full = np.fft.irfft(f * np.conj(f), nfft)[: max_lag + 1]
        return full / n
    return np.array([d[: n - k] @ d[k:] for k in range(max_lag + 1)]) / n


def lrv_bartlett(u, bandwidth):
    u = np.asarray(u, dtype=float)
    n = u.size
    total = u @ u / n
    for k in range(1, min(bandwidth, n - 1) + 1):
        total += 2.0 * (1.0 - k / (bandwidth + 1.0)) * (u[: n - k] @ u[k:]) / n
    return float(total)


def lrcov_bartlett(z, bandwidth):
    z = np.asarray(z, dtype=float)
    n = z.shape[0]
    out = z.T @ z / n
    for k in range(1, min(bandwidth, n - 1) + 1):
        g = z[: n - k].T @ z[k:] / n
        out += (1.0 - k / (bandwidth + 1.0)) * (g + g.T)
    return out


def project(x, w):
    return np.convolve(np.asarray(x, dtype=float), np.asarray(w, dtype=float), mode="valid")


def clayton_chain(u0, w, theta):
    a = -theta / (1.0 + theta)
    out = np.empty(len(w))
    u = u0
    for t, wt in enumerate(w):
        u = ((wt**a - 1.0) * u**-theta + 1.0) ** (-1.0 / theta)
        out[t] = u
    return out
