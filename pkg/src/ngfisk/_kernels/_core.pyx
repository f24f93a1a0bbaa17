# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the tilted log-logistic distribution.

Must stay numerically interchangeable with ``_fallback`` (the test suite
pins the two backends together); any formula change lands in both files.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, expm1, isfinite, log, log1p

cnp.import_array()

BACKEND = "compiled"

cdef double _Z_BIG = 30.0
cdef double _INF = float("inf")


cdef inline double _log_a(double z, double delta) nogil:
    # log(1 + (1-delta)*exp(z)), stable for large z
    if z <= _Z_BIG:
        return log1p((1.0 - delta) * exp(z))
    return z + log(1.0 - delta) + log1p(exp(-z) / (1.0 - delta))


def nll(double[::1] x, double alpha, double beta, double theta, double delta):
    """Negative log-likelihood. Returns +inf for an infeasible point."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double lz, sum_lz = 0.0, sum_log_a = 0.0, ll
    if not (alpha > 0 and beta > 0 and theta > 0 and 0 < delta < 1):
        return _INF
    for i in range(n):
        lz = log(x[i] / alpha)
        sum_lz += lz
        sum_log_a += _log_a(beta * lz, delta)
    ll = (
        n * (log(theta) + log1p(-delta) + log(beta) - log(alpha))
        + (beta - 1.0) * sum_lz
        - (theta + 1.0) * sum_log_a
    )
    if not isfinite(ll):
        return _INF
    return -ll


def score(double[::1] x, double alpha, double beta, double theta, double delta):
    """Gradient of the log-likelihood, order (theta, delta, alpha, beta)."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double lz, z, r
    cdef double sum_log_a = 0.0, sum_r = 0.0, s_beta_acc = 0.0
    for i in range(n):
        lz = log(x[i] / alpha)
        z = beta * lz
        r = 1.0 / (exp(-z) + (1.0 - delta))
        sum_log_a += _log_a(z, delta)
        sum_r += r
        s_beta_acc += lz * (1.0 - (theta + 1.0) * (1.0 - delta) * r)
    out = np.empty(4, dtype=np.float64)
    cdef double[::1] o = out
    o[0] = n / theta - sum_log_a
    o[1] = -n / (1.0 - delta) + (theta + 1.0) * sum_r
    o[2] = -n * beta / alpha + (theta + 1.0) * (beta / alpha) * (1.0 - delta) * sum_r
    o[3] = n / beta + s_beta_acc
    return out


def cdf(double[::1] x, double alpha, double beta, double theta, double delta):
    cdef Py_ssize_t i, n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        if x[i] > 0.0:
            o[i] = -expm1(-theta * _log_a(beta * log(x[i] / alpha), delta))
        else:
            o[i] = 0.0
    return out


def sf(double[::1] x, double alpha, double beta, double theta, double delta):
    cdef Py_ssize_t i, n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        if x[i] > 0.0:
            o[i] = exp(-theta * _log_a(beta * log(x[i] / alpha), delta))
        else:
            o[i] = 1.0
    return out


def pdf(double[::1] x, double alpha, double beta, double theta, double delta):
    """Density on x > 0 (the x == 0 edge cases live in the wrapper)."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double lz, log_g
    cdef double lead = log(theta) + log1p(-delta) + log(beta / alpha)
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        if x[i] > 0.0:
            lz = log(x[i] / alpha)
            log_g = lead + (beta - 1.0) * lz - (theta + 1.0) * _log_a(beta * lz, delta)
            o[i] = exp(log_g)
        else:
            o[i] = 0.0
    return out


def hazard(double[::1] x, double alpha, double beta, double theta, double delta):
    """Hazard rate in closed form; one power of A, so no 0/0 in the far tail."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double lz
    cdef double lead = log(theta) + log1p(-delta) + log(beta / alpha)
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        if x[i] > 0.0:
            lz = log(x[i] / alpha)
            o[i] = exp(lead + (beta - 1.0) * lz - _log_a(beta * lz, delta))
        else:
            o[i] = 0.0
    return out


def chf(double[::1] x, double alpha, double beta, double theta, double delta):
    """Cumulative hazard theta*log(1 + (1-delta)*(x/alpha)^beta)."""
    cdef Py_ssize_t i, n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        if x[i] > 0.0:
            o[i] = theta * _log_a(beta * log(x[i] / alpha), delta)
        else:
            o[i] = 0.0
    return out


def quantile(double[::1] p, double alpha, double beta, double theta, double delta):
    """Inverse CDF: t = ((1-p)^(-1/theta) - 1)/(1-delta), x = alpha*t^(1/beta)."""
    cdef Py_ssize_t i, n = p.shape[0]
    cdef double log_t
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        if p[i] > 0.0:
            log_t = log(expm1(-log1p(-p[i]) / theta)) - log1p(-delta)
            o[i] = alpha * exp(log_t / beta)
        else:
            o[i] = 0.0
    return out
