"""Two-parameter tilting transform applied to an arbitrary baseline CDF.

Given a baseline distribution F with density f, the transformed family
is

    G(x) = 1 - [ (1 - F(x)) / (1 - delta*F(x)) ]**theta,   theta > 0,
                                                           0 < delta < 1,

which exponentiates a Marshall-Olkin style odds tilt of the survival
function.  ``delta -> 0`` recovers the proportional-hazards family
``1 - (1-F)**theta``; ``theta = 1`` is a pure tilt.  delta = 0 itself is
rejected at construction; pass delta = 1e-12 for the limit.

All evaluators take the baseline as a :class:`Baseline` bundle of
callables so new baselines need no subclassing.  These generic routes
are deliberately independent of the closed forms in
:mod:`ngfisk.distribution`; the test suite plays them against each
other.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._util import as_float_array, check_positive, check_unit_open, maybe_scalar

__all__ = [
    "Baseline",
    "FamilyParams",
    "fisk_baseline",
    "ngx_cdf",
    "ngx_pdf",
    "ngx_sf",
    "ngx_hazard",
    "ngx_chf",
    "ngx_rhr",
    "ngx_quantile",
]

# keeps baseline inversion away from the 0/1 endpoints
_P_EPS = 1e-15


@dataclass(frozen=True)
class Baseline:
    """Baseline distribution as a bundle of vectorised callables.

    Parameters
    ----------
    name : str
        Label used in reprs and error messages.
    cdf, pdf : callable
        Evaluate F and f on a float64 array.
    quantile : callable
        Inverse of ``cdf``; required by :func:`ngx_quantile`.
    support_lo : float
        Lower support edge; arguments below it are domain errors.
    """

    name: str
    cdf: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    pdf: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    quantile: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    support_lo: float = 0.0


@dataclass(frozen=True)
class FamilyParams:
    """Transform parameters; validated on construction."""

    theta: float
    delta: float

    def __post_init__(self):
        check_positive(self.theta, "theta")
        check_unit_open(self.delta, "delta")


def _checked_x(baseline, x):
    arr = as_float_array(x)
    if np.any(arr < baseline.support_lo):
        raise ValueError(
            f"x below the lower support edge {baseline.support_lo:g} "
            f"of baseline {baseline.name}"
        )
    return arr


def _baseline_cdf(baseline, arr):
    f_x = np.asarray(baseline.cdf(arr), dtype=np.float64)
    return np.clip(f_x, 0.0, 1.0)


def ngx_cdf(baseline, params, x):
    """Transformed CDF ``1 - ((1-F)/(1-delta*F))**theta``."""
    arr = _checked_x(baseline, x)
    f_x = _baseline_cdf(baseline, arr)
    log_ratio = np.log1p(-f_x) - np.log1p(-params.delta * f_x)
    out = -np.expm1(params.theta * log_ratio)
    return maybe_scalar(out, x)


def ngx_sf(baseline, params, x):
    """Transformed survival function ``((1-F)/(1-delta*F))**theta``."""
    arr = _checked_x(baseline, x)
    f_x = _baseline_cdf(baseline, arr)
    log_ratio = np.log1p(-f_x) - np.log1p(-params.delta * f_x)
    return maybe_scalar(np.exp(params.theta * log_ratio), x)


def ngx_pdf(baseline, params, x):
    """Transformed density.

    g = theta*(1-delta)*f*(1-F)**(theta-1) / (1-delta*F)**(theta+1),
    evaluated through logs so extreme theta stays finite.

    Past the point where the baseline CDF rounds to 1.0 the factor
    (1-F)**(theta-1) is no longer computable from cdf values; such
    entries come back 0.  For theta well below 1 the mass beyond that
    horizon is not negligible, and the log-space specialisation in
    :mod:`ngfisk.distribution` is the accurate route.
    """
    arr = _checked_x(baseline, x)
    theta, delta = params.theta, params.delta
    f_x = _baseline_cdf(baseline, arr)
    dens = np.asarray(baseline.pdf(arr), dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_g = (
            np.log(theta)
            + np.log1p(-delta)
            + (theta - 1.0) * np.log1p(-f_x)
            - (theta + 1.0) * np.log1p(-delta * f_x)
        )
        out = np.where((dens > 0.0) & (f_x < 1.0), dens * np.exp(log_g), 0.0)
    return maybe_scalar(out, x)


def ngx_hazard(baseline, params, x):
    """Hazard rate ``g/(1-G) = theta*(1-delta)*f / ((1-F)(1-delta*F))``.

    Where the baseline CDF has reached 1 in floating point the survival
    is 0 and the rate overflows; those entries come back +inf.
    """
    arr = _checked_x(baseline, x)
    theta, delta = params.theta, params.delta
    f_x = _baseline_cdf(baseline, arr)
    dens = np.asarray(baseline.pdf(arr), dtype=np.float64)
    denom = (1.0 - f_x) * (1.0 - delta * f_x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(denom > 0.0, theta * (1.0 - delta) * dens / denom, np.inf)
    return maybe_scalar(out, x)


def ngx_chf(baseline, params, x):
    """Cumulative hazard ``-log(1-G) = -theta*log((1-F)/(1-delta*F))``."""
    arr = _checked_x(baseline, x)
    f_x = _baseline_cdf(baseline, arr)
    log_ratio = np.log1p(-f_x) - np.log1p(-params.delta * f_x)
    return maybe_scalar(-params.theta * log_ratio, x)


def ngx_rhr(baseline, params, x):
    """Reversed hazard rate ``g/G``, defined only where G > 0."""
    arr = _checked_x(baseline, x)
    g_x = np.asarray(ngx_pdf(baseline, params, arr), dtype=np.float64)
    big_g = np.asarray(ngx_cdf(baseline, params, arr), dtype=np.float64)
    if np.any(big_g == 0.0):
        raise ValueError("reversed hazard undefined where the CDF is 0")
    return maybe_scalar(g_x / big_g, x)


def ngx_quantile(baseline, params, p):
    """Inverse of :func:`ngx_cdf` for p strictly inside (0, 1).

    Solving G(x) = p for the baseline argument gives
    F = (1-u)/(1-delta*u) with u = (1-p)**(1/theta), after which the
    baseline quantile finishes the job.  The target probability is
    clamped to [1e-15, 1-1e-15] so baselines with infinite endpoints do
    not overflow.
    """
    arr = as_float_array(p, "p")
    if np.any((arr <= 0.0) | (arr >= 1.0)):
        raise ValueError("p must lie strictly inside (0, 1)")
    u = np.exp(np.log1p(-arr) / params.theta)
    f_target = np.clip((1.0 - u) / (1.0 - params.delta * u), _P_EPS, 1.0 - _P_EPS)
    out = np.asarray(baseline.quantile(f_target), dtype=np.float64)
    return maybe_scalar(out, p)


def fisk_baseline(alpha, beta):
    """Log-logistic (Fisk) baseline with scale ``alpha`` and shape ``beta``.

    F(x) = t/(1+t) with t = (x/alpha)**beta.  This is the baseline whose
    transform the rest of the package specialises.
    """
    check_positive(alpha, "alpha")
    check_positive(beta, "beta")

    def cdf(x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore"):
            t = np.power(x / alpha, beta)
        return np.where(x > 0.0, t / (1.0 + t), 0.0)

    def pdf(x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.power(x / alpha, beta)
            dens = (beta / alpha) * np.power(x / alpha, beta - 1.0) / (1.0 + t) ** 2
        return np.where(x > 0.0, dens, 0.0)

    def quantile(p):
        p = np.asarray(p, dtype=np.float64)
        with np.errstate(divide="ignore"):
            out = alpha * np.exp((np.log(p) - np.log1p(-p)) / beta)
        return np.where(p > 0.0, out, 0.0)

    return Baseline(name=f"fisk(alpha={alpha:g}, beta={beta:g})",
                    cdf=cdf, pdf=pdf, quantile=quantile)
