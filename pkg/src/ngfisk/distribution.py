"""Tilted log-logistic (NG-Fisk) distribution.

Closed forms for the log-logistic baseline pushed through the tilting
transform of :mod:`ngfisk.family`.  With t = (x/alpha)**beta,

    F(x) = 1 - (1 + (1-delta)*t)**(-theta)

which is a Burr XII law in disguise: substituting
c = alpha*(1-delta)**(-1/beta) gives F(x) = 1 - (1+(x/c)**beta)**(-theta)
exactly.  (alpha, delta) are therefore not jointly identifiable from
data; only the combination c is.  :func:`effective_burr` exposes the
mapping, and the fitter reports it.

Array ops route through the compiled kernels when available.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import _kernels
from ._util import as_float_array, check_positive, check_unit_open, maybe_scalar

__all__ = [
    "NgFiskParams",
    "EffectiveBurrParams",
    "pdf",
    "cdf",
    "sf",
    "hazard",
    "chf",
    "rhr",
    "survival_hazard_chf_rhr",
    "quantile",
    "median",
    "sample",
    "raw_moment",
    "central_moment",
    "mean",
    "variance",
    "galton_skewness",
    "moors_kurtosis",
    "order_stat_pdf",
    "effective_burr",
]


@dataclass(frozen=True)
class NgFiskParams:
    """Parameter set (alpha, beta, theta, delta); validated on construction.

    alpha > 0 scale, beta > 0 baseline shape, theta > 0 tilt exponent,
    delta in (0, 1) tilt fraction.
    """

    alpha: float
    beta: float
    theta: float
    delta: float

    def __post_init__(self):
        check_positive(self.alpha, "alpha")
        check_positive(self.beta, "beta")
        check_positive(self.theta, "theta")
        check_unit_open(self.delta, "delta")

    def as_tuple(self):
        return (self.alpha, self.beta, self.theta, self.delta)


@dataclass(frozen=True)
class EffectiveBurrParams:
    """Burr XII parameter set (c, beta, theta) equivalent to an
    :class:`NgFiskParams`; c is the identifiable scale."""

    c: float
    beta: float
    theta: float


def effective_burr(params):
    """Map to the identifiable Burr XII parametrisation.

    c = alpha*(1-delta)**(-1/beta).  Any (alpha, delta) pair with the
    same c produces the same distribution.
    """
    c = params.alpha * (1.0 - params.delta) ** (-1.0 / params.beta)
    return EffectiveBurrParams(c=c, beta=params.beta, theta=params.theta)


def _eval_nonneg(x, name="x"):
    arr = as_float_array(x, name)
    if np.any(arr < 0.0):
        raise ValueError(f"{name} must be non-negative")
    return arr


def _pdf_at_zero(params):
    # limit of the density as x -> 0+, split on the sign of beta - 1
    if params.beta > 1.0:
        return 0.0
    if params.beta == 1.0:
        return params.theta * (1.0 - params.delta) * params.beta / params.alpha
    return np.inf


def pdf(params, x):
    """Density.

    theta*(1-delta)*(beta/alpha)*(x/alpha)**(beta-1)
    / (1 + (1-delta)*(x/alpha)**beta)**(theta+1) for x > 0.  At x = 0 the
    limit depends on beta: 0 above 1, theta*(1-delta)*beta/alpha at 1,
    and an infinity sentinel below 1.
    """
    arr = _eval_nonneg(x)
    out = _kernels.pdf(arr, *params.as_tuple())
    if np.any(arr == 0.0):
        out = np.where(arr == 0.0, _pdf_at_zero(params), out)
    return maybe_scalar(out, x)


def cdf(params, x):
    arr = _eval_nonneg(x)
    out = _kernels.cdf(arr, *params.as_tuple())
    return maybe_scalar(out, x)


def sf(params, x):
    arr = _eval_nonneg(x)
    out = _kernels.sf(arr, *params.as_tuple())
    return maybe_scalar(out, x)


def hazard(params, x):
    """Hazard rate theta*(1-delta)*(beta/alpha)*(x/alpha)**(beta-1)
    / (1 + (1-delta)*(x/alpha)**beta); same x = 0 edge behaviour as the
    pdf, since the denominator is 1 there."""
    arr = _eval_nonneg(x)
    out = _kernels.hazard(arr, *params.as_tuple())
    if np.any(arr == 0.0):
        out = np.where(arr == 0.0, _pdf_at_zero(params), out)
    return maybe_scalar(out, x)


def chf(params, x):
    """Cumulative hazard H = -log(sf) = theta*log1p((1-delta)*t)."""
    arr = _eval_nonneg(x)
    out = _kernels.chf(arr, *params.as_tuple())
    return maybe_scalar(out, x)


def rhr(params, x):
    """Reversed hazard rate pdf/cdf, defined for x > 0 only."""
    arr = as_float_array(x)
    if np.any(arr <= 0.0):
        raise ValueError("x must be strictly positive for the reversed hazard")
    dens = _kernels.pdf(arr, *params.as_tuple())
    prob = _kernels.cdf(arr, *params.as_tuple())
    return maybe_scalar(dens / prob, x)


def survival_hazard_chf_rhr(params, x):
    """Evaluate (survival, hazard, cumulative hazard, reversed hazard)
    together.

    At x = 0 the reversed hazard has no value (the CDF vanishes); that
    component comes back NaN while the other three stay defined.
    """
    arr = _eval_nonneg(x)
    surv = _kernels.sf(arr, *params.as_tuple())
    haz = _kernels.hazard(arr, *params.as_tuple())
    cum = _kernels.chf(arr, *params.as_tuple())
    dens = _kernels.pdf(arr, *params.as_tuple())
    prob = _kernels.cdf(arr, *params.as_tuple())
    zero = arr == 0.0
    if np.any(zero):
        haz = np.where(zero, _pdf_at_zero(params), haz)
    with np.errstate(divide="ignore", invalid="ignore"):
        rev = np.where(zero, np.nan, dens / prob)
    return (
        maybe_scalar(surv, x),
        maybe_scalar(haz, x),
        maybe_scalar(cum, x),
        maybe_scalar(rev, x),
    )


def quantile(params, prob):
    """Inverse CDF.

    x = alpha * (((1-p)**(-1/theta) - 1)/(1-delta))**(1/beta) for p
    strictly inside (0, 1).
    """
    arr = as_float_array(prob, "prob")
    if np.any((arr <= 0.0) | (arr >= 1.0)):
        raise ValueError("prob must lie strictly inside (0, 1)")
    out = _kernels.quantile(arr, *params.as_tuple())
    return maybe_scalar(out, prob)


def median(params):
    return float(quantile(params, 0.5))


def sample(params, n, seed=None):
    """Draw ``n`` variates by inverse-transform sampling.

    A fixed integer ``seed`` makes the output reproducible bit for bit:
    the generator is ``numpy.random.default_rng(seed)`` and consumes
    exactly one block of ``n`` uniforms.  ``n = 0`` yields an empty
    vector.
    """
    if not (isinstance(n, (int, np.integer)) and n >= 0):
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    rng = np.random.default_rng(seed)
    u = rng.random(int(n))
    return _kernels.quantile(u, *params.as_tuple())


def raw_moment(params, r):
    """r-th raw moment E[X^r], or ``None`` when the tail is too heavy.

    The moment exists iff r < beta*theta.  It is computed by adaptive
    quadrature of the quantile representation (E[X^r] as the integral of
    quantile(u)**r over u in (0, 1), taken through the substitution
    u = 1 - e^{-v} so the integrand decays exponentially).
    """
    if not (np.isscalar(r) and np.isfinite(r) and r >= 1):
        raise ValueError(f"moment order must be a real >= 1, got {r!r}")
    a, b, th, d = params.as_tuple()
    if r >= b * th:
        return None

    log_a = math.log(a)
    log_1md = math.log1p(-d)

    def log_expm1(y):
        if y > 30.0:
            return y + math.log1p(-math.exp(-y))
        return math.log(math.expm1(y))

    def integrand(v):
        # q(1-e^{-v}) = alpha*(expm1(v/theta)/(1-delta))**(1/beta);
        # the exponent r*log q - v ~ -v*(1 - r/(beta*theta)) stays negative
        if v <= 0.0:
            return 0.0
        log_q = log_a + (log_expm1(v / th) - log_1md) / b
        return math.exp(r * log_q - v)

    value, _err = integrate.quad(integrand, 0.0, np.inf, limit=200)
    return float(value)


def central_moment(params, r):
    """r-th central moment E[(X-mu)^r] via the binomial expansion over
    raw moments; ``None`` whenever a needed raw moment diverges."""
    if not (isinstance(r, (int, np.integer)) and r >= 1):
        raise ValueError(f"central moment order must be an integer >= 1, got {r!r}")
    if r >= params.beta * params.theta:
        return None
    m = [1.0]
    for j in range(1, r + 1):
        m_j = raw_moment(params, j)
        if m_j is None:
            return None
        m.append(m_j)
    mu = m[1]
    return float(
        sum(math.comb(r, j) * m[j] * (-mu) ** (r - j) for j in range(r + 1))
    )


def mean(params):
    return raw_moment(params, 1)


def variance(params):
    """Var X = E[X^2] - (E[X])^2; ``None`` when the second moment diverges."""
    m2 = raw_moment(params, 2)
    if m2 is None:
        return None
    m1 = raw_moment(params, 1)
    return m2 - m1 * m1


def galton_skewness(params):
    """Quartile-based skewness (Q3 + Q1 - 2*Q2)/(Q3 - Q1); always lies
    strictly inside (-1, 1), unlike moment skewness it exists for every
    parameter choice."""
    q1, q2, q3 = (float(quantile(params, p)) for p in (0.25, 0.5, 0.75))
    return (q3 + q1 - 2.0 * q2) / (q3 - q1)


def moors_kurtosis(params):
    """Octile-based kurtosis (E7 - E5 + E3 - E1)/(E6 - E2)."""
    e = {k: float(quantile(params, k / 8.0)) for k in (1, 2, 3, 5, 6, 7)}
    return (e[7] - e[5] + e[3] - e[1]) / (e[6] - e[2])


def order_stat_pdf(params, i, n, x):
    """Density of the i-th order statistic of an n-sample.

    n!/((i-1)!(n-i)!) * F^(i-1) * (1-F)^(n-i) * f, evaluated through
    log-gamma to keep large n finite.
    """
    if not (isinstance(i, (int, np.integer)) and isinstance(n, (int, np.integer))):
        raise ValueError("i and n must be integers")
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    arr = _eval_nonneg(x)
    prob = _kernels.cdf(arr, *params.as_tuple())
    surv = _kernels.sf(arr, *params.as_tuple())
    dens = pdf(params, arr)
    log_w = math.lgamma(n + 1) - math.lgamma(i) - math.lgamma(n - i + 1)
    with np.errstate(divide="ignore"):
        # skip zero exponents so F = 0 at i = 1 stays 0*log(0)-free
        if i > 1:
            log_w = log_w + (i - 1.0) * np.log(prob)
        if i < n:
            log_w = log_w + (n - i) * np.log(surv)
    out = np.exp(log_w) * np.asarray(dens)
    return maybe_scalar(out, x)
