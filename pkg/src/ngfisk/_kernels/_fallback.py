"""Vectorised numpy kernels for the tilted log-logistic distribution.

Hot paths only: likelihood, score and the pointwise distribution
functions that the fitting and simulation loops hammer.  No argument
validation here; the public wrappers own that.

Parameter order in signatures is (alpha, beta, theta, delta); the score
vector is returned in the reporting order (theta, delta, alpha, beta).
"""

import numpy as np

BACKEND = "python"

# z = beta*log(x/alpha); above this, exp(z) would swamp the +1 in log1p
_Z_BIG = 30.0


def _log_a(z, delta):
    """log(1 + (1-delta)*exp(z)), stable for large z."""
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    small = z <= _Z_BIG
    out[small] = np.log1p((1.0 - delta) * np.exp(z[small]))
    zb = z[~small]
    out[~small] = zb + np.log(1.0 - delta) + np.log1p(np.exp(-zb) / (1.0 - delta))
    return out


def nll(x, alpha, beta, theta, delta):
    """Negative log-likelihood. Returns +inf for an infeasible point."""
    if not (alpha > 0 and beta > 0 and theta > 0 and 0 < delta < 1):
        return np.inf
    lz = np.log(x / alpha)
    log_a = _log_a(beta * lz, delta)
    n = x.shape[0]
    ll = (
        n * (np.log(theta) + np.log1p(-delta) + np.log(beta) - np.log(alpha))
        + (beta - 1.0) * lz.sum()
        - (theta + 1.0) * log_a.sum()
    )
    if not np.isfinite(ll):
        return np.inf
    return -ll


def score(x, alpha, beta, theta, delta):
    """Gradient of the log-likelihood, order (theta, delta, alpha, beta)."""
    n = x.shape[0]
    lz = np.log(x / alpha)
    z = beta * lz
    log_a = _log_a(z, delta)
    # r = t/(1+(1-delta)t) computed as 1/(exp(-z) + (1-delta)): exact for huge t
    r = 1.0 / (np.exp(-z) + (1.0 - delta))
    sum_r = r.sum()
    s_theta = n / theta - log_a.sum()
    s_delta = -n / (1.0 - delta) + (theta + 1.0) * sum_r
    s_alpha = -n * beta / alpha + (theta + 1.0) * (beta / alpha) * (1.0 - delta) * sum_r
    s_beta = n / beta + (lz * (1.0 - (theta + 1.0) * (1.0 - delta) * r)).sum()
    return np.array([s_theta, s_delta, s_alpha, s_beta])


def cdf(x, alpha, beta, theta, delta):
    with np.errstate(divide="ignore"):
        z = beta * np.log(x / alpha)
    out = -np.expm1(-theta * _log_a(z, delta))
    return np.where(x > 0.0, out, 0.0)


def sf(x, alpha, beta, theta, delta):
    with np.errstate(divide="ignore"):
        z = beta * np.log(x / alpha)
    out = np.exp(-theta * _log_a(z, delta))
    return np.where(x > 0.0, out, 1.0)


def pdf(x, alpha, beta, theta, delta):
    """Density on x > 0 (the x == 0 edge cases live in the wrapper)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        lz = np.log(x / alpha)
        log_a = _log_a(beta * lz, delta)
        log_g = (
            np.log(theta)
            + np.log1p(-delta)
            + np.log(beta / alpha)
            + (beta - 1.0) * lz
            - (theta + 1.0) * log_a
        )
        out = np.exp(log_g)
    return np.where(x > 0.0, out, 0.0)


def hazard(x, alpha, beta, theta, delta):
    """Hazard rate in closed form; one power of A, so no 0/0 in the far tail."""
    with np.errstate(divide="ignore", invalid="ignore"):
        lz = np.log(x / alpha)
        log_h = (
            np.log(theta)
            + np.log1p(-delta)
            + np.log(beta / alpha)
            + (beta - 1.0) * lz
            - _log_a(beta * lz, delta)
        )
        out = np.exp(log_h)
    return np.where(x > 0.0, out, 0.0)


def chf(x, alpha, beta, theta, delta):
    """Cumulative hazard theta*log(1 + (1-delta)*(x/alpha)^beta)."""
    with np.errstate(divide="ignore"):
        z = beta * np.log(x / alpha)
    return np.where(x > 0.0, theta * _log_a(z, delta), 0.0)


def quantile(p, alpha, beta, theta, delta):
    """Inverse CDF: t = ((1-p)^(-1/theta) - 1)/(1-delta), x = alpha*t^(1/beta)."""
    with np.errstate(divide="ignore"):
        log_t = np.log(np.expm1(-np.log1p(-p) / theta)) - np.log1p(-delta)
        out = alpha * np.exp(log_t / beta)
    return np.where(p > 0.0, out, 0.0)
