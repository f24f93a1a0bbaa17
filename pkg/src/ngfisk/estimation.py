"""Maximum-likelihood fitting.

The tilted log-logistic likelihood is optimised with a multi-start
Nelder-Mead pass in unconstrained coordinates (log scale for alpha,
beta, theta; logit for delta) followed by an L-BFGS-B polish that uses
the analytic score.  Multi-start matters here: the likelihood is exactly
flat along the curve alpha*(1-delta)**(-1/beta) = const (see
:mod:`ngfisk.distribution`), so single starts can wander and report
spurious "optima" on the ridge with a worse objective.

Every fit reports the identifiable effective scale ``c_hat`` and a
``ridge_flat`` diagnostic alongside the raw estimates; standard errors
come from the observed information and are NaN whenever the Hessian
cannot back a positive variance, which for (alpha, delta) is the
expected outcome rather than a failure.

A generic multi-start driver (:func:`fit_generic`) backs the competitor
models, which only need a negative log-likelihood and a box.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize
from scipy.special import expit, logit

from . import _kernels
from ._util import as_float_array
from .distribution import NgFiskParams, effective_burr

__all__ = [
    "ParamBox",
    "DEFAULT_BOX",
    "FitResult",
    "log_likelihood",
    "score",
    "fit_mle",
    "fit_generic",
    "observed_info_se",
    "hessian_std_errors",
    "percentile_ci",
]

NGFISK_NAMES = ("theta", "delta", "alpha", "beta")

_GRAD_TOL = 1e-5
_SIMPLEX_TOL = 1e-8
_BOUNDARY_TOL = 1e-6


@dataclass(frozen=True)
class ParamBox:
    """Rectangular parameter constraints as (name, low, high) triples.

    All bounds must be finite with 0 < low < high; optimisation runs in
    log coordinates, so the box doubles as the positivity constraint.
    """

    bounds: tuple

    def __post_init__(self):
        seen = set()
        for name, lo, hi in self.bounds:
            if name in seen:
                raise ValueError(f"duplicate parameter name {name!r}")
            seen.add(name)
            if not (np.isfinite(lo) and np.isfinite(hi) and 0 < lo < hi):
                raise ValueError(
                    f"bounds for {name!r} must satisfy 0 < low < high, got ({lo}, {hi})"
                )

    @property
    def names(self):
        return tuple(name for name, _, _ in self.bounds)

    @property
    def lower(self):
        return np.array([lo for _, lo, _ in self.bounds])

    @property
    def upper(self):
        return np.array([hi for _, _, hi in self.bounds])

    def interval(self, name):
        for bname, lo, hi in self.bounds:
            if bname == name:
                return (lo, hi)
        raise KeyError(name)

    def replace(self, name, lo, hi):
        """New box with one parameter's bounds swapped out."""
        if name not in self.names:
            raise KeyError(name)
        return ParamBox(
            tuple(
                (bname, lo, hi) if bname == name else (bname, blo, bhi)
                for bname, blo, bhi in self.bounds
            )
        )

    def clip(self, values):
        return np.clip(values, self.lower, self.upper)


DEFAULT_BOX = ParamBox(
    (
        ("alpha", 1e-4, 1e4),
        ("beta", 1e-4, 1e3),
        ("theta", 1e-2, 10.0),
        ("delta", 0.01, 0.99),
    )
)


@dataclass(frozen=True)
class FitResult:
    """Outcome of a maximum-likelihood fit.

    ``names``/``estimates``/``std_errors``/``ci95``/``at_boundary`` are
    aligned tuples; a NaN standard error means the observed information
    could not back a variance for that component.  ``at_boundary[i]`` is
    true when estimate i sits within 1e-6 of its box edge.
    ``c_hat``/``ridge_flat`` are only set by the tilted log-logistic
    fitter.
    """

    model: str
    names: tuple
    estimates: tuple
    std_errors: tuple
    ci95: tuple
    loglik: float
    converged: bool
    n_obs: int
    n_starts: int
    at_boundary: tuple = ()
    c_hat: Optional[float] = None
    ridge_flat: Optional[bool] = None

    @property
    def nll(self):
        return -self.loglik

    def estimate(self, name):
        return self.estimates[self.names.index(name)]

    def boundary_names(self):
        return tuple(n for n, f in zip(self.names, self.at_boundary) if f)

    def as_dict(self):
        return dict(zip(self.names, self.estimates))


def _check_data(x, min_size=1):
    arr = as_float_array(x, "data")
    if arr.size < min_size:
        raise ValueError(f"need at least {min_size} observations, got {arr.size}")
    if np.any(arr <= 0.0):
        raise ValueError("data must be strictly positive")
    return arr


def log_likelihood(params, data):
    """Log-likelihood of ``params`` for a positive sample; -inf when a
    density term underflows (never an exception for that)."""
    arr = _check_data(data)
    value = _kernels.nll(arr, *params.as_tuple())
    return -value


def score(params, data):
    """Analytic gradient of the log-likelihood, order (theta, delta,
    alpha, beta).

    With A_i = 1 + (1-delta)*t_i and t_i = (x_i/alpha)**beta:

        d/dtheta = n/theta - sum log A_i
        d/ddelta = -n/(1-delta) + (theta+1) sum t_i/A_i
        d/dalpha = -n*beta/alpha
                   + (theta+1)*(beta/alpha)*(1-delta) sum t_i/A_i
        d/dbeta  = n/beta + sum log(x_i/alpha)*(1 - (theta+1)*(1-delta)*t_i/A_i)
    """
    arr = _check_data(data)
    return _kernels.score(arr, *params.as_tuple())


# ---------------------------------------------------------------- #
# tilted log-logistic fitter
# ---------------------------------------------------------------- #


def _to_z(p):
    return np.array([np.log(p[0]), np.log(p[1]), np.log(p[2]), logit(p[3])])


def _from_z(z, box):
    with np.errstate(over="ignore"):
        p = np.array([np.exp(z[0]), np.exp(z[1]), np.exp(z[2]), expit(z[3])])
    return box.clip(p)


def _quantile_start(x, box, delta0=0.25):
    """Method-of-quantiles start.

    Matches sample quartiles to the Burr XII quantile function (theta by
    bisection on the quartile log-spacing ratio, then beta and c in
    closed form) and splits c into (alpha, delta) at delta = delta0.
    """
    q1, q2, q3 = np.quantile(x, [0.25, 0.5, 0.75])
    if not 0 < q1 < q2 < q3:
        fallback = np.array([q2 if q2 > 0 else 1.0, 1.0, 1.0, delta0])
        return box.clip(fallback)

    r_emp = (np.log(q3) - np.log(q2)) / (np.log(q2) - np.log(q1))

    def h(p, th):
        return (1.0 - p) ** (-1.0 / th) - 1.0

    def ratio(th):
        return (np.log(h(0.75, th)) - np.log(h(0.5, th))) / (
            np.log(h(0.5, th)) - np.log(h(0.25, th))
        )

    lo, hi = 1e-2, 10.0
    theta = 1.0
    f_lo = ratio(lo) - r_emp
    if f_lo * (ratio(hi) - r_emp) < 0:
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if f_lo * (ratio(mid) - r_emp) <= 0:
                hi = mid
            else:
                lo, f_lo = mid, ratio(mid) - r_emp
        theta = 0.5 * (lo + hi)

    inv_beta = (np.log(q3) - np.log(q1)) / (np.log(h(0.75, theta)) - np.log(h(0.25, theta)))
    beta = 1.0 / inv_beta
    c = q2 / h(0.5, theta) ** inv_beta
    alpha = c * (1.0 - delta0) ** inv_beta
    return box.clip(np.array([alpha, beta, theta, delta0]))


def _latin_hypercube(rng, m, d):
    u = np.empty((m, d))
    for j in range(d):
        u[:, j] = (rng.permutation(m) + rng.uniform(size=m)) / m
    return u


def _simplex_diameter(res):
    try:
        verts = res.final_simplex[0]
    except (AttributeError, TypeError):
        return np.inf
    return float(np.max(np.linalg.norm(verts - verts[0], axis=1)))


def _polish_identifiable(x, a0, b0, th0, d0, box, f0):
    """Gradient refinement of (c, beta, theta) at fixed delta = d0.

    The likelihood depends on (alpha, delta) only through the effective
    scale c = alpha*(1-delta)**(-1/beta), so this polish reaches the
    same objective as a full 4-d one without moving the unidentified
    coordinate.  Returns the refined (alpha, beta, theta, delta, nll).
    """
    a_lo, a_hi = box.interval("alpha")
    b_lo, b_hi = box.interval("beta")
    t_lo, t_hi = box.interval("theta")
    log_1md = np.log1p(-d0)
    c0 = a0 * (1.0 - d0) ** (-1.0 / b0)

    def split(y):
        c, b, th = np.exp(y)
        a = float(np.clip(c * (1.0 - d0) ** (1.0 / b), a_lo, a_hi))
        return a, b, th

    def nll_and_grad(y):
        a, b, th = split(y)
        value = _kernels.nll(x, a, b, th, d0)
        s_th, s_d, s_a, s_b = _kernels.score(x, a, b, th, d0)
        g_logc = -s_a * a
        g_logb = -s_b * b + s_a * a * log_1md / b
        g_logth = -s_th * th
        return value, np.array([g_logc, g_logb, g_logth])

    y0 = np.log([c0, b0, th0])
    y_bounds = [
        (np.log(a_lo) - log_1md / b0, np.log(a_hi) - log_1md / b0),
        (np.log(b_lo), np.log(b_hi)),
        (np.log(t_lo), np.log(t_hi)),
    ]
    res = optimize.minimize(
        nll_and_grad,
        np.clip(y0, [b[0] for b in y_bounds], [b[1] for b in y_bounds]),
        method="L-BFGS-B",
        jac=True,
        bounds=y_bounds,
        options=dict(maxfun=500, ftol=1e-13, gtol=1e-9),
    )
    if res.fun <= f0:
        a, b, th = split(res.x)
        return a, b, th, d0, float(res.fun)
    return a0, b0, th0, d0, float(f0)


def _ridge_representative(c, beta, box):
    """Pick the reported (alpha, delta) on the ridge of equal likelihood.

    Every (alpha, delta) with alpha*(1-delta)**(-1/beta) = c fits the
    data identically, so the choice is a convention: delta = 0.25 (the
    initialisation value), pushed along the ridge only as far as the box
    requires.
    """
    d_lo, d_hi = box.interval("delta")
    a_lo, a_hi = box.interval("alpha")
    delta = min(max(0.25, d_lo), d_hi)
    alpha = c * (1.0 - delta) ** (1.0 / beta)
    if alpha > a_hi:
        delta = 1.0 - np.exp(beta * np.log(a_hi / c))
    elif alpha < a_lo:
        delta = 1.0 - np.exp(beta * np.log(a_lo / c))
    else:
        return float(alpha), float(delta)
    delta = float(np.clip(delta, d_lo, d_hi))
    alpha = float(np.clip(c * (1.0 - delta) ** (1.0 / beta), a_lo, a_hi))
    return alpha, delta


def _boundary_flags(estimates, names, box):
    out = []
    for name, value in zip(names, estimates):
        lo, hi = box.interval(name)
        out.append(bool(value <= lo + _BOUNDARY_TOL or value >= hi - _BOUNDARY_TOL))
    return tuple(out)


def _ridge_flat(x, alpha, beta, theta, delta, box, nll_hat):
    """True when the profile along alpha*(1-delta)**(-1/beta) = const is
    numerically flat, i.e. (alpha, delta) are not separately determined."""
    c = alpha * (1.0 - delta) ** (-1.0 / beta)
    d_lo, d_hi = box.interval("delta")
    a_lo, a_hi = box.interval("alpha")
    spread = 0.0
    for d_test in np.linspace(d_lo, d_hi, 7):
        a_test = c * (1.0 - d_test) ** (1.0 / beta)
        if not a_lo <= a_test <= a_hi:
            continue
        val = _kernels.nll(x, a_test, beta, theta, d_test)
        spread = max(spread, abs(val - nll_hat))
    return bool(spread <= 1e-6 * max(1.0, abs(nll_hat)))


def fit_mle(data, box=None, starts=8, seed=0, fix_delta=None):
    """Fit the tilted log-logistic by maximum likelihood.

    Parameters
    ----------
    data : array_like
        Strictly positive observations with at least two distinct
        values.
    box : ParamBox, optional
        Rectangular constraints; defaults to :data:`DEFAULT_BOX`.
    starts : int
        Number of optimiser starts: one method-of-quantiles start plus
        Latin-hypercube jitter around it.
    seed : int
        Seeds the jitter only; the fit is deterministic given
        (data, box, starts, seed).
    fix_delta : float, optional
        Profile mode: hold delta at this value and fit only the
        identifiable (c, beta, theta).  The reported alpha is then
        c*(1-delta)**(1/beta) at the fixed delta.

    Returns
    -------
    FitResult
        Estimates ordered (theta, delta, alpha, beta), observed-information
        standard errors, Wald intervals clipped to the box, plus the
        ridge diagnostics ``c_hat`` and ``ridge_flat``.

    Notes
    -----
    (alpha, delta) are not separately identifiable: the likelihood is
    exactly constant along alpha*(1-delta)**(-1/beta) = c.  The fit
    optimises the identifiable (c, beta, theta) and reports the ridge
    point at delta = 0.25 by convention (moved only if the box demands
    it); treat ``c_hat`` as the scale estimate, not ``alpha``.
    Non-convergence is reported through the flag, never raised.
    """
    x = _check_data(data)
    if np.ptp(x) == 0.0:
        raise ValueError(
            "degenerate data: all observations are equal, the likelihood "
            "has no interior maximum"
        )
    if box is None:
        box = DEFAULT_BOX
    if set(box.names) != set(NGFISK_NAMES):
        raise ValueError(f"box must constrain exactly {sorted(NGFISK_NAMES)}")
    if not (isinstance(starts, (int, np.integer)) and starts >= 1):
        raise ValueError(f"starts must be a positive integer, got {starts!r}")

    abtd_box = ParamBox(tuple((n, *box.interval(n)) for n in ("alpha", "beta", "theta", "delta")))
    d_lo, d_hi = abtd_box.interval("delta")
    if fix_delta is not None:
        if not d_lo <= fix_delta <= d_hi:
            raise ValueError(f"fix_delta must lie in [{d_lo}, {d_hi}], got {fix_delta!r}")
        profile_delta = float(fix_delta)
    else:
        profile_delta = None
    rng = np.random.default_rng(seed)

    if profile_delta is None:
        def nll_z(z):
            return _kernels.nll(x, *_from_z(z, abtd_box))
        start0 = _quantile_start(x, abtd_box)
        z_starts = [_to_z(start0)]
        span = np.array([2.0, 1.0, 2.0, 2.0])
        dim = 4
    else:
        # profile fit: optimise (log alpha, log beta, log theta) with
        # delta pinned; alpha stands in for c up to the fixed factor
        def nll_z(z):
            p = abtd_box.clip(np.array([np.exp(z[0]), np.exp(z[1]), np.exp(z[2]),
                                        profile_delta]))
            return _kernels.nll(x, *p)
        start0 = _quantile_start(x, abtd_box, delta0=profile_delta)
        z_starts = [np.log(start0[:3])]
        span = np.array([2.0, 1.0, 2.0])
        dim = 3

    if starts > 1:
        jitter = _latin_hypercube(rng, starts - 1, dim)
        for row in jitter:
            z_starts.append(z_starts[0] + (row - 0.5) * 2.0 * span)

    best = None
    for z0 in z_starts:
        res = optimize.minimize(
            nll_z,
            z0,
            method="Nelder-Mead",
            options=dict(maxiter=2000, fatol=1e-10, xatol=1e-8),
        )
        if best is None or res.fun < best.fun:
            best = res

    # Polish only the identifiable coordinates (c, beta, theta) with the
    # analytic score, holding delta fixed.  A full 4-d gradient polish
    # would drift delta along the flat ridge for a ~1e-9 objective gain,
    # turning an arbitrary convention into noise.
    if profile_delta is None:
        a0, b0, th0, d0 = _from_z(best.x, abtd_box)
    else:
        a0, b0, th0 = abtd_box.clip(
            np.array([np.exp(best.x[0]), np.exp(best.x[1]), np.exp(best.x[2]), profile_delta])
        )[:3]
        d0 = profile_delta
    alpha, beta, theta, delta, nll_hat = _polish_identifiable(
        x, a0, b0, th0, d0, abtd_box, best.fun
    )

    c_hat = alpha * (1.0 - delta) ** (-1.0 / beta)
    if profile_delta is None:
        # report the conventional ridge representative (same likelihood)
        alpha, delta = _ridge_representative(c_hat, beta, abtd_box)
        nll_hat = _kernels.nll(x, alpha, beta, theta, delta)

    # convergence: projected gradient of the full problem in log/logit
    # coordinates (on the ridge the alpha and delta components vanish
    # together once the effective scale is stationary), or a collapsed
    # simplex
    s_th, s_d, s_a, s_b = _kernels.score(x, alpha, beta, theta, delta)
    grad = -np.array([s_a * alpha, s_b * beta, s_th * theta,
                      s_d * delta * (1.0 - delta)])
    z_best = _to_z((alpha, beta, theta, delta))
    z_lo = _to_z(abtd_box.lower)
    z_hi = _to_z(abtd_box.upper)
    at_lower = z_best <= z_lo + 1e-9
    at_upper = z_best >= z_hi - 1e-9
    if profile_delta is not None:
        at_lower[3] = at_upper[3] = True  # delta pinned, its score is moot
    projected = np.where(at_lower & (grad > 0), 0.0, grad)
    projected = np.where(at_upper & (projected < 0), 0.0, projected)
    converged = bool(
        np.max(np.abs(projected)) < _GRAD_TOL * max(1.0, abs(nll_hat))
        or _simplex_diameter(best) < _SIMPLEX_TOL
    )

    estimates = (theta, delta, alpha, beta)
    params_hat = NgFiskParams(alpha=alpha, beta=beta, theta=theta, delta=delta)
    ses = observed_info_se(params_hat, x)
    ci95 = _wald_ci(estimates, ses, NGFISK_NAMES, box)

    return FitResult(
        model="ngfisk",
        names=NGFISK_NAMES,
        estimates=estimates,
        std_errors=tuple(ses),
        ci95=ci95,
        loglik=-nll_hat,
        converged=converged,
        n_obs=int(x.size),
        n_starts=int(starts),
        at_boundary=_boundary_flags(estimates, NGFISK_NAMES, box),
        c_hat=effective_burr(params_hat).c,
        ridge_flat=_ridge_flat(x, alpha, beta, theta, delta, box, nll_hat),
    )


# ---------------------------------------------------------------- #
# generic multi-start driver (competitor models)
# ---------------------------------------------------------------- #


def fit_generic(data, neg_loglik, box, model="model", starts=8, seed=0, start=None):
    """Multi-start maximum likelihood for an arbitrary positive-parameter
    model.

    ``neg_loglik(params, x)`` must return a float (+inf or a huge value
    for infeasible points).  Starts are Latin-hypercube draws over the
    log-box, optionally preceded by an explicit ``start``.
    """
    x = _check_data(data)
    names = box.names
    k = len(names)
    z_lo = np.log(box.lower)
    z_hi = np.log(box.upper)
    rng = np.random.default_rng(seed)

    def nll_z(z):
        p = np.exp(np.clip(z, z_lo, z_hi))
        with np.errstate(all="ignore"):
            value = neg_loglik(p, x)
        if not np.isfinite(value):
            return 1e12
        return value

    z_starts = []
    if start is not None:
        z_starts.append(np.log(box.clip(np.asarray(start, dtype=np.float64))))
    n_random = starts - len(z_starts)
    if n_random > 0:
        u = _latin_hypercube(rng, n_random, k)
        for row in u:
            z_starts.append(z_lo + row * (z_hi - z_lo))

    best = None
    for z0 in z_starts:
        res = optimize.minimize(
            nll_z,
            z0,
            method="Nelder-Mead",
            options=dict(maxiter=1500 * k, fatol=1e-10, xatol=1e-9),
        )
        if best is None or res.fun < best.fun:
            best = res

    polish = optimize.minimize(
        nll_z,
        np.clip(best.x, z_lo, z_hi),
        method="L-BFGS-B",
        bounds=list(zip(z_lo, z_hi)),
        options=dict(maxfun=2000, ftol=1e-13),
    )
    z_best = polish.x if polish.fun <= best.fun else np.clip(best.x, z_lo, z_hi)
    estimates = tuple(np.exp(z_best))
    nll_hat = nll_z(z_best)
    converged = bool(polish.success or best.success)

    def nll_named(vec):
        with np.errstate(all="ignore"):
            value = neg_loglik(np.asarray(vec), x)
        return value if np.isfinite(value) else 1e12

    ses = hessian_std_errors(nll_named, np.array(estimates))
    return FitResult(
        model=model,
        names=names,
        estimates=estimates,
        std_errors=tuple(ses),
        ci95=_wald_ci(estimates, ses, names, box),
        loglik=-nll_hat,
        converged=converged,
        n_obs=int(x.size),
        n_starts=int(starts),
        at_boundary=_boundary_flags(estimates, names, box),
    )


# ---------------------------------------------------------------- #
# uncertainty
# ---------------------------------------------------------------- #


def hessian_std_errors(nll_fn, estimates):
    """Standard errors from a numeric observed-information matrix.

    Central-difference Hessian of ``nll_fn`` at ``estimates`` with per
    component step max(1e-4, 1e-4*|estimate|), inverted to a covariance.
    Components whose implied variance is not positive come back NaN;
    with a flat likelihood direction that is the honest answer.
    """
    point = np.asarray(estimates, dtype=np.float64)
    k = point.size
    h = np.maximum(1e-4, 1e-4 * np.abs(point))
    hessian = np.empty((k, k))
    f0 = nll_fn(point)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        hessian[i, i] = (nll_fn(point + ei) - 2.0 * f0 + nll_fn(point - ei)) / h[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = h[j]
            hessian[i, j] = hessian[j, i] = (
                nll_fn(point + ei + ej)
                - nll_fn(point + ei - ej)
                - nll_fn(point - ei + ej)
                + nll_fn(point - ei - ej)
            ) / (4.0 * h[i] * h[j])
    try:
        cov = np.linalg.inv(hessian)
    except np.linalg.LinAlgError:
        return np.full(k, np.nan)
    diag = np.diag(cov)
    with np.errstate(invalid="ignore"):
        ses = np.where(diag > 0, np.sqrt(np.abs(diag)), np.nan)
    if not np.all(np.isfinite(hessian)):
        ses = np.full(k, np.nan)
    return ses


def observed_info_se(params, data):
    """Observed-information standard errors for a fitted parameter set,
    ordered (theta, delta, alpha, beta) like :func:`score`.

    Thin wrapper over :func:`hessian_std_errors` with the sample's
    negative log-likelihood as the objective.  Along the
    (alpha, delta) ridge the information matrix is singular, so those
    components are NaN by construction; ``c_hat`` is the quantity with a
    finite variance.
    """
    x = _check_data(data)

    def nll_named(vec):
        th, d, a, b = vec
        return _kernels.nll(x, a, b, th, d)

    point = np.array([params.theta, params.delta, params.alpha, params.beta])
    return hessian_std_errors(nll_named, point)


def _wald_ci(estimates, ses, names, box):
    out = []
    for name, est, se in zip(names, estimates, ses):
        if not np.isfinite(se):
            out.append((math.nan, math.nan))
            continue
        lo, hi = box.interval(name)
        out.append((max(lo, est - 1.96 * se), min(hi, est + 1.96 * se)))
    return tuple(out)


def percentile_ci(values, level=0.95, interval=None):
    """Empirical central interval of Monte Carlo replicates: the
    (1-level)/2 and 1-(1-level)/2 quantiles with linear interpolation.

    Requires at least 40 values so the default 2.5% tails rest on data;
    optionally clipped to ``interval`` (e.g. the fitting box).
    """
    arr = as_float_array(values, "values")
    if arr.size < 40:
        raise ValueError(
            f"need at least 40 values for a percentile interval, got {arr.size}"
        )
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level!r}")
    tail = 0.5 * (1.0 - level)
    lo, hi = np.quantile(arr, [tail, 1.0 - tail], method="linear")
    if interval is not None:
        lo = max(lo, interval[0])
        hi = min(hi, interval[1])
    return (float(lo), float(hi))
