"""Information criteria, goodness of fit and model ranking."""

from dataclasses import dataclass

import numpy as np

from . import distribution
from ._util import as_float_array
from .competitors import COMPETITORS, competitor_cdf, competitor_from_fit, fit_competitor
from .estimation import fit_mle

__all__ = [
    "InfoCriteria",
    "ModelScore",
    "info_criteria",
    "cramer_von_mises",
    "rank_models",
    "score_model",
    "compare_models",
]


@dataclass(frozen=True)
class InfoCriteria:
    aic: float
    bic: float
    caic: float
    hqic: float


def info_criteria(nll, k, n):
    """AIC/BIC/CAIC/HQIC from a negative log-likelihood.

    aic  = 2k + 2nll
    bic  = k*log(n) + 2nll
    caic = aic + 2k(k+1)/(n-k-1)      (needs n > k+1)
    hqic = 2k*log(log(n)) + 2nll
    """
    if not (isinstance(k, (int, np.integer)) and k >= 0):
        raise ValueError(f"k must be a non-negative integer, got {k!r}")
    if not (isinstance(n, (int, np.integer)) and n >= 2):
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    if n - k - 1 <= 0:
        raise ValueError(f"CAIC needs n > k + 1, got n={n}, k={k}")
    nll = float(nll)
    aic = 2.0 * k + 2.0 * nll
    return InfoCriteria(
        aic=aic,
        bic=k * np.log(n) + 2.0 * nll,
        caic=aic + 2.0 * k * (k + 1.0) / (n - k - 1.0),
        hqic=2.0 * k * np.log(np.log(n)) + 2.0 * nll,
    )


def cramer_von_mises(data, cdf):
    """Cramer-von Mises statistic W^2 = 1/(12n) + sum((2i-1)/(2n) - F(x_(i)))^2.

    ``cdf`` is called once on the sorted sample.
    """
    arr = np.sort(as_float_array(data, "data"))
    n = arr.size
    if n < 1:
        raise ValueError("data must be non-empty")
    f_sorted = np.asarray(cdf(arr), dtype=np.float64)
    i = np.arange(1, n + 1)
    return float(1.0 / (12.0 * n) + np.sum(((2.0 * i - 1.0) / (2.0 * n) - f_sorted) ** 2))


@dataclass(frozen=True)
class ModelScore:
    """One model's scorecard in a comparison.

    ``name`` is the display label; ``key`` the compact registry key; the
    criteria follow the conventions in :func:`info_criteria`.
    """

    name: str
    k: int
    n: int
    nll: float
    aic: float
    bic: float
    caic: float
    hqic: float
    cm: float
    key: str = ""
    estimates: tuple = ()
    param_names: tuple = ()


def rank_models(scores):
    """Rank ascending by AIC, breaking ties by BIC and then name;
    needs at least two entrants to be a comparison."""
    scores = list(scores)
    if len(scores) < 2:
        raise ValueError(f"ranking needs at least 2 scores, got {len(scores)}")
    return sorted(scores, key=lambda s: (s.aic, s.bic, s.name))


def score_model(name, data, starts=12, seed=0):
    """Fit one model by name ("ngfisk" or a competitor key/label) and
    build its scorecard."""
    arr = as_float_array(data, "data")
    n = int(arr.size)
    if name == "ngfisk":
        fit = fit_mle(arr, seed=seed)
        params = distribution.NgFiskParams(
            alpha=fit.estimate("alpha"),
            beta=fit.estimate("beta"),
            theta=fit.estimate("theta"),
            delta=fit.estimate("delta"),
        )
        cm = cramer_von_mises(arr, lambda v: distribution.cdf(params, v))
        label = "NG-Fisk"
    else:
        fit = fit_competitor(name, arr, starts=starts, seed=seed)
        fitted = competitor_from_fit(fit)
        cm = cramer_von_mises(arr, lambda v: competitor_cdf(fitted, v))
        label = fitted.family.label
    k = len(fit.names)
    ic = info_criteria(fit.nll, k, n)
    return ModelScore(
        name=label,
        k=k,
        n=n,
        nll=fit.nll,
        aic=ic.aic,
        bic=ic.bic,
        caic=ic.caic,
        hqic=ic.hqic,
        cm=cm,
        key=fit.model,
        estimates=fit.estimates,
        param_names=fit.names,
    )


def compare_models(data, models=None, starts=12, seed=0):
    """Fit the tilted log-logistic plus the requested competitors and
    return their scorecards ranked by AIC.

    ``models`` defaults to every registered competitor; include
    ``"ngfisk"`` explicitly if subsetting.
    """
    arr = as_float_array(data, "data")
    if models is None:
        models = ["ngfisk", *sorted(COMPETITORS)]
    scores = [score_model(name, arr, starts=starts, seed=seed) for name in models]
    if len(scores) == 1:
        return scores
    return rank_models(scores)
