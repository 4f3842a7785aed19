# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures and results mirror :mod:`tsgauss._pykernels`."""

import numpy as np
cimport numpy as cnp
from libc.math cimport pow

cnp.import_array()


cdef inline double _dot(const double* a, const double* b, Py_ssize_t n) nogil:
    # four partial sums so the compiler can pipeline the reduction
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0
    cdef Py_ssize_t t = 0
    while t + 4 <= n:
        s0 += a[t] * b[t]
        s1 += a[t + 1] * b[t + 1]
        s2 += a[t + 2] * b[t + 2]
        s3 += a[t + 3] * b[t + 3]
        t += 4
    while t < n:
        s0 += a[t] * b[t]
        t += 1
    return (s0 + s1) + (s2 + s3)


def acov(const double[::1] x, Py_ssize_t max_lag):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t k, t
    cdef double mean = 0.0
    if max_lag > 32:
        # O(n log n) beats the direct sum for long lag ranges
        return _fft_acov(np.asarray(x), max_lag)
    d_arr = np.empty(n)
    cdef double[::1] d = d_arr
    out = np.zeros(max_lag + 1)
    cdef double[::1] o = out
    for t in range(n):
        mean += x[t]
    mean /= n
    for t in range(n):
        d[t] = x[t] - mean
    for k in range(max_lag + 1):
        o[k] = _dot(&d[0], &d[k], n - k) / n
    return out


def _fft_acov(x, max_lag):
    n = x.size
    d = x - x.mean()
    nfft = 1 << int(np.ceil(np.log2(2 * n)))
    f = np.fft.rfft(d, nfft)
    return np.fft.irfft(f * np.conj(f), nfft)[: max_lag + 1] / n


def lrv_bartlett(const double[::1] u, Py_ssize_t bandwidth):
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t k
    cdef double total = _dot(&u[0], &u[0], n) / n
    for k in range(1, min(bandwidth, n - 1) + 1):
        total += 2.0 * (1.0 - k / (bandwidth + 1.0)) * _dot(&u[0], &u[k], n - k) / n
    return total


def lrcov_bartlett(const double[:, ::1] z, Py_ssize_t bandwidth):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t p = z.shape[1]
    cdef Py_ssize_t k, i, j
    cdef double w, c
    # columns made contiguous so each lag product is a plain dot
    cols_arr = np.ascontiguousarray(np.asarray(z).T)
    cdef double[:, ::1] cols = cols_arr
    out = np.zeros((p, p))
    cdef double[:, ::1] o = out
    for i in range(p):
        for j in range(i, p):
            c = _dot(&cols[i, 0], &cols[j, 0], n) / n
            o[i, j] = c
            o[j, i] = c
    for k in range(1, min(bandwidth, n - 1) + 1):
        w = 1.0 - k / (bandwidth + 1.0)
        for i in range(p):
            for j in range(p):
                # lag-k cross product z_i(t) z_j(t+k) feeds (i, j) and (j, i)
                c = w * _dot(&cols[i, 0], &cols[j, k], n - k) / n
                o[i, j] += c
                o[j, i] += c
    return out


def project(const double[::1] x, const double[::1] w):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t j, i
    rev_arr = np.ascontiguousarray(np.asarray(w)[::-1])
    cdef double[::1] rev = rev_arr
    out = np.empty(n - m + 1)
    cdef double[::1] o = out
    for j in range(n - m + 1):
        o[j] = _dot(&rev[0], &x[j], m)
    return out


def clayton_chain(double u0, const double[::1] w, double theta):
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t t
    cdef double u = u0
    cdef double a = -theta / (1.0 + theta)
    out = np.empty(n)
    cdef double[::1] o = out
    for t in range(n):
        u = pow((pow(w[t], a) - 1.0) * pow(u, -theta) + 1.0, -1.0 / theta)
        o[t] = u
    return out
