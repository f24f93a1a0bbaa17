"""Competitor lifetime models for the comparison benchmarks.

Five published Weibull-flavoured alternatives, each defined by its CDF
exactly as printed in the source works (including the quirk that the
two flexible-Weibull variants put positive mass arbitrarily close to
zero with G(0+) = 1 - 1/e):

    NEx-FW  G = 1 - exp(-exp(beta*x**gamma + theta*x**2))
    FW      G = 1 - exp(-exp(beta*x**gamma + theta*x**alpha))
    Ku-W    G = 1 - (1 - (1 - exp(-gamma*x**theta))**a)**b
    Z-W     G = (exp(alpha*(1 - exp(-gamma*x**theta))) - 1)/(exp(alpha) - 1)
    KWP     G = (1 - exp(-lam*K))/(1 - exp(-lam)),
            K = 1 - (1 - W**a)**b,  W = 1 - exp(-(beta*x)**c)

Log-densities are derived analytically and evaluated through
expm1/log1p so the fitters see finite values over the whole box.
"""

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._util import as_float_array, maybe_scalar
from .estimation import ParamBox, fit_generic

__all__ = [
    "CompetitorFamily",
    "CompetitorModel",
    "COMPETITORS",
    "get_family",
    "competitor_cdf",
    "competitor_pdf",
    "fit_competitor",
    "competitor_from_fit",
]

_LN_HALF = -math.log(2.0)


def _log1mexp(y):
    """log(1 - exp(y)) for y < 0, accurate across both regimes."""
    y = np.asarray(y, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(y > _LN_HALF, np.log(-np.expm1(y)), np.log1p(-np.exp(y)))


def _log_expm1(a):
    """log(exp(a) - 1) for a > 0 without overflow."""
    if a > 30.0:
        return a + math.log1p(-math.exp(-a))
    return math.log(math.expm1(a))


def _guarded_nll(logpdf):
    def neg_loglik(p, x):
        with np.errstate(all="ignore"):
            lp = logpdf(p, x)
        if not np.all(np.isfinite(lp)):
            return np.inf
        return -float(np.sum(lp))

    return neg_loglik


@dataclass(frozen=True)
class CompetitorFamily:
    """A fit-ready competitor template: names, box, log-density and CDF."""

    key: str
    label: str
    param_names: tuple
    logpdf: Callable = field(repr=False)
    cdf: Callable = field(repr=False)
    neg_loglik: Callable = field(repr=False)
    box: ParamBox = field(repr=False)

    @property
    def n_params(self):
        return len(self.param_names)


# ---------------------------------------------------------------- #
# NEx-FW: exponentiated flexible Weibull with quadratic term
# params (beta, gamma, theta)
# ---------------------------------------------------------------- #


def _logpdf_nexfw(p, x):
    b, g, th = p
    e = b * x**g + th * x**2
    de = b * g * x ** (g - 1.0) + 2.0 * th * x
    return np.log(de) + e - np.exp(e)


def _cdf_nexfw(p, x):
    b, g, th = p
    return -np.expm1(-np.exp(b * x**g + th * x**2))


# ---------------------------------------------------------------- #
# FW: flexible Weibull with two free exponents
# params (alpha, gamma, beta, theta); density symmetric under
# (gamma, beta) <-> (alpha, theta), canonicalised to gamma <= alpha
# ---------------------------------------------------------------- #


def _logpdf_fw(p, x):
    a, g, b, th = p
    e = b * x**g + th * x**a
    de = b * g * x ** (g - 1.0) + th * a * x ** (a - 1.0)
    return np.log(de) + e - np.exp(e)


def _cdf_fw(p, x):
    a, g, b, th = p
    return -np.expm1(-np.exp(b * x**g + th * x**a))


# ---------------------------------------------------------------- #
# Ku-W: Kumaraswamy-Weibull
# params (a, b, gamma, theta)
# ---------------------------------------------------------------- #


def _logpdf_kuw(p, x):
    a, b, g, th = p
    t = g * x**th
    log_w = _log1mexp(-t)
    log_wa = a * log_w
    log_dens_w = np.log(g) + np.log(th) + (th - 1.0) * np.log(x) - t
    return (
        np.log(a)
        + np.log(b)
        + log_dens_w
        + (a - 1.0) * log_w
        + (b - 1.0) * _log1mexp(log_wa)
    )


def _cdf_kuw(p, x):
    a, b, g, th = p
    with np.errstate(divide="ignore"):
        log_wa = a * _log1mexp(-(g * x**th))
    return -np.expm1(b * np.log1p(-np.exp(log_wa)))


# ---------------------------------------------------------------- #
# Z-W: Zubair-Weibull
# params (alpha, gamma, theta)
# ---------------------------------------------------------------- #


def _logpdf_zw(p, x):
    a, g, th = p
    t = g * x**th
    w = -np.expm1(-t)
    log_dens_w = np.log(g) + np.log(th) + (th - 1.0) * np.log(x) - t
    return np.log(a) + log_dens_w + a * w - _log_expm1(a)


def _cdf_zw(p, x):
    a, g, th = p
    w = -np.expm1(-(g * x**th))
    return np.expm1(a * w) / math.expm1(a)


# ---------------------------------------------------------------- #
# KWP: Kumaraswamy-Weibull-Poisson
# params (a, b, c, beta, lam)
# ---------------------------------------------------------------- #


def _logpdf_kwp(p, x):
    a, b, c, be, lam = p
    t = (be * x) ** c
    log_w = _log1mexp(-t)
    log_wa = a * log_w
    log_one_minus_wa_b = b * _log1mexp(log_wa)
    big_k = -np.expm1(log_one_minus_wa_b)
    log_dens_w = np.log(c) + np.log(be) + (c - 1.0) * np.log(be * x) - t
    log_dens_k = (
        np.log(a)
        + np.log(b)
        + log_dens_w
        + (a - 1.0) * log_w
        + (b - 1.0) * _log1mexp(log_wa)
    )
    return np.log(lam) + log_dens_k - lam * big_k - float(_log1mexp(-lam))


def _cdf_kwp(p, x):
    a, b, c, be, lam = p
    with np.errstate(divide="ignore"):
        log_wa = a * _log1mexp(-((be * x) ** c))
    big_k = -np.expm1(b * np.log1p(-np.exp(log_wa)))
    return np.expm1(-lam * big_k) / math.expm1(-lam)


def _make(key, label, param_names, logpdf, cdf, lo=1e-4, hi=100.0):
    return CompetitorFamily(
        key=key,
        label=label,
        param_names=param_names,
        logpdf=logpdf,
        cdf=cdf,
        neg_loglik=_guarded_nll(logpdf),
        box=ParamBox(tuple((n, lo, hi) for n in param_names)),
    )


COMPETITORS = {
    "nexfw": _make("nexfw", "NEx-FW", ("beta", "gamma", "theta"),
                   _logpdf_nexfw, _cdf_nexfw),
    "fw": _make("fw", "FW", ("alpha", "gamma", "beta", "theta"),
                _logpdf_fw, _cdf_fw),
    "kuw": _make("kuw", "Ku-W", ("a", "b", "gamma", "theta"),
                 _logpdf_kuw, _cdf_kuw),
    "zw": _make("zw", "Z-W", ("alpha", "gamma", "theta"),
                _logpdf_zw, _cdf_zw),
    "kwp": _make("kwp", "KWP", ("a", "b", "c", "beta", "lam"),
                 _logpdf_kwp, _cdf_kwp),
}


def get_family(name):
    key = name.lower().replace("-", "").replace("_", "")
    if key not in COMPETITORS:
        raise KeyError(f"unknown competitor model {name!r}; choose from "
                       f"{sorted(COMPETITORS)}")
    return COMPETITORS[key]


@dataclass(frozen=True)
class CompetitorModel:
    """One competitor pinned to concrete parameter values.

    ``name`` may be the display label ("Ku-W") or the compact key
    ("kuw"); ``params`` must match the family's arity and be strictly
    positive.
    """

    name: str
    params: tuple
    box: ParamBox = None

    def __post_init__(self):
        family = get_family(self.name)
        values = tuple(float(v) for v in self.params)
        if len(values) != family.n_params:
            raise ValueError(
                f"{family.label} takes {family.n_params} parameters "
                f"{family.param_names}, got {len(values)}"
            )
        if any(not (np.isfinite(v) and v > 0.0) for v in values):
            raise ValueError(f"{family.label} parameters must be positive, got {values}")
        object.__setattr__(self, "params", values)
        if self.box is None:
            object.__setattr__(self, "box", family.box)

    @property
    def family(self):
        return get_family(self.name)


def competitor_cdf(m, x):
    """CDF of a parametrised competitor at x >= 0 (the printed formula,
    evaluated literally; NEx-FW and FW place mass 1-1/e at 0+)."""
    arr = as_float_array(x)
    if np.any(arr < 0.0):
        raise ValueError("x must be non-negative")
    with np.errstate(all="ignore"):
        out = np.asarray(m.family.cdf(np.asarray(m.params), arr), dtype=np.float64)
    return maybe_scalar(np.clip(out, 0.0, 1.0), x)


def competitor_pdf(m, x):
    """Density of a parametrised competitor at x > 0, from the analytic
    derivative of its CDF."""
    arr = as_float_array(x)
    if np.any(arr <= 0.0):
        raise ValueError("x must be strictly positive")
    with np.errstate(all="ignore"):
        out = np.exp(m.family.logpdf(np.asarray(m.params), arr))
    return maybe_scalar(np.asarray(out, dtype=np.float64), x)


def _canonicalise_fw(fit):
    """Resolve the FW labelling symmetry: order the exponents gamma <= alpha."""
    est = dict(zip(fit.names, fit.estimates))
    if est["gamma"] <= est["alpha"]:
        return fit
    perm = {"alpha": "gamma", "gamma": "alpha", "beta": "theta", "theta": "beta"}
    index = {n: i for i, n in enumerate(fit.names)}
    order = [index[perm[n]] for n in fit.names]
    return dataclasses.replace(
        fit,
        estimates=tuple(fit.estimates[i] for i in order),
        std_errors=tuple(fit.std_errors[i] for i in order),
        ci95=tuple(fit.ci95[i] for i in order),
        at_boundary=tuple(fit.at_boundary[i] for i in order),
    )


def fit_competitor(name, data, starts=12, seed=0, box=None):
    """Fit one competitor by multi-start maximum likelihood.

    ``box`` overrides the model's default constraints; see
    :func:`ngfisk.estimation.fit_generic` for the optimiser details.
    """
    family = get_family(name)
    use_box = box if box is not None else family.box
    start = np.ones(family.n_params)
    fit = fit_generic(
        data,
        family.neg_loglik,
        use_box,
        model=family.key,
        starts=starts,
        seed=seed,
        start=start,
    )
    if family.key == "fw":
        fit = _canonicalise_fw(fit)
    return fit


def competitor_from_fit(fit):
    """Wrap a competitor FitResult's estimates as a CompetitorModel so
    the cdf/pdf evaluators can use them directly."""
    return CompetitorModel(name=fit.model, params=fit.estimates)
