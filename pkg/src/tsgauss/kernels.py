"""Backend selection for the numerical inner loops.

The compiled extension is used when it imports; otherwise the numpy fallback.
Set ``TSGAUSS_BACKEND=python`` to force the fallback.

Even with the extension loaded, the lag-product reductions (``acov``,
``lrv_bartlett``, ``lrcov_bartlett``) run through numpy, whose BLAS dot
products beat the compiled loops (see ``benchmarks/bench_kernels.py``). The
compiled path serves the kernels where it wins or ties: the sequential
Clayton recursion and the projection filter.
"""

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels


def _select():
    wanted = os.environ.get("TSGAUSS_BACKEND", "").lower()
    if wanted:
        if wanted not in _BACKENDS:
            raise ImportError(f"tsgauss backend {wanted!r} is not available")
        return wanted
    return "cython" if "cython" in _BACKENDS else "python"


BACKEND = _select()
_impl = _BACKENDS[BACKEND]
_reduce = _pykernels  # numpy wins for BLAS-bound reductions on every backend


def available_backends():
    return sorted(_BACKENDS)


def get_backend(name):
    return _BACKENDS[name]


def acov(x, max_lag):
    """Sample autocovariances ``gamma(0..max_lag)`` with denominator n."""
    return _reduce.acov(np.ascontiguousarray(x, dtype=float), int(max_lag))


def lrv_bartlett(u, bandwidth):
    """Bartlett-weighted long-run variance of an already centred sequence."""
    return float(_reduce.lrv_bartlett(np.ascontiguousarray(u, dtype=float), int(bandwidth)))


def lrcov_bartlett(z, bandwidth):
    """Bartlett-weighted long-run covariance matrix of centred columns of ``z``."""
    return _reduce.lrcov_bartlett(np.ascontiguousarray(z, dtype=float), int(bandwidth))


def project(x, w):
    """Finite causal filter ``y_j = sum_i w_i x_{j+K-i}`` over fully covered samples."""
    return _impl.project(np.ascontiguousarray(x, dtype=float), np.ascontiguousarray(w, dtype=float))


def clayton_chain(u0, w, theta):
    """Iterate the Clayton conditional inverse from ``u0`` driven by uniforms ``w``."""
    return _impl.clayton_chain(float(u0), np.ascontiguousarray(w, dtype=float), float(theta))
