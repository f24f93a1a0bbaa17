"""Monte Carlo study of the maximum-likelihood estimators.

Each replicate draws an inverse-transform sample from a known truth,
refits it, and the per-parameter estimates are reduced to mean, bias,
variance (population denominator) and mse = variance + bias**2, which
makes the decomposition an identity rather than an approximation.

Alongside the four raw parameters every summary carries a ``c_hat`` row
for the identifiable effective scale: on the (alpha, delta) ridge the
raw alpha and delta rows mostly measure the reporting convention, while
c_hat actually concentrates as n grows.

Replicate streams come from ``numpy.random.SeedSequence(seed).spawn``
(one child per sample size, re-spawned per replicate), so results are
reproducible bit for bit for a given case and independent of execution
order.
"""

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._util import as_float_array
from .distribution import NgFiskParams, effective_burr, sample
from .estimation import DEFAULT_BOX, ParamBox, fit_mle, percentile_ci

__all__ = [
    "SimCase",
    "SimRow",
    "ConvergenceInfo",
    "SimSummary",
    "aggregate",
    "run_case",
]

# below this the tail percentiles of the replicate distribution are noise
_MIN_REPS = 40


@dataclass(frozen=True)
class SimCase:
    """One study configuration: a truth, a grid of sample sizes, a
    replication count and a seed."""

    truth: NgFiskParams
    sample_sizes: tuple
    replications: int
    seed: int = 0
    box: Optional[ParamBox] = None

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.sample_sizes)
        if not sizes:
            raise ValueError("sample_sizes must be non-empty")
        if any(n <= 0 for n in sizes):
            raise ValueError(f"sample sizes must be positive, got {sizes}")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError(f"sample sizes must be strictly ascending, got {sizes}")
        object.__setattr__(self, "sample_sizes", sizes)
        if not (
            isinstance(self.replications, (int, np.integer))
            and self.replications >= _MIN_REPS
        ):
            raise ValueError(
                f"replications must be an integer >= {_MIN_REPS}, "
                f"got {self.replications!r}"
            )


@dataclass(frozen=True)
class SimRow:
    """Replicate-level summary for one (sample size, parameter) cell;
    ``n`` is None when the row came from a bare matrix with no sampling
    context."""

    n: Optional[int]
    parameter: str
    truth: float
    mle_mean: float
    bias: float
    variance: float
    mse: float
    ci95: Optional[tuple]


@dataclass(frozen=True)
class ConvergenceInfo:
    """Replicate accounting for one sample size."""

    n: Optional[int]
    replications: int
    used: int
    excluded: int

    @property
    def rate(self):
        return self.used / self.replications if self.replications else 0.0


@dataclass(frozen=True)
class SimSummary:
    """Per-(n, parameter) rows plus per-n replicate accounting."""

    rows: tuple
    convergence: tuple
    elapsed_s: float = 0.0

    def row(self, n, parameter):
        for r in self.rows:
            if r.n == n and r.parameter == parameter:
                return r
        raise KeyError((n, parameter))

    def convergence_for(self, n):
        for c in self.convergence:
            if c.n == n:
                return c
        raise KeyError(n)


def _summarise_columns(matrix, truth, names, box, n, with_ci):
    rows = []
    for j, name in enumerate(names):
        col = matrix[:, j]
        mle_mean = float(col.mean())
        bias = mle_mean - truth[j]
        variance = float(((col - mle_mean) ** 2).mean())
        ci = None
        if with_ci and col.size >= _MIN_REPS:
            interval = None
            if box is not None and name in box.names:
                interval = box.interval(name)
            ci = percentile_ci(col, interval=interval)
        rows.append(
            SimRow(
                n=n,
                parameter=name,
                truth=float(truth[j]),
                mle_mean=mle_mean,
                bias=bias,
                variance=variance,
                mse=variance + bias**2,
                ci95=ci,
            )
        )
    return rows


def aggregate(replicates, truth, names=None, box=None, n=None, require_ci=True):
    """Reduce a replicate matrix to a :class:`SimSummary`.

    ``replicates`` is (R,) or (R, P); ``truth`` a scalar or length-P
    vector.  Percentile CIs need at least 40 rows; with fewer,
    ``require_ci=True`` (the default) raises and ``require_ci=False``
    reports the moment statistics with ``ci95=None``.
    """
    matrix = np.atleast_2d(as_float_array(replicates, "replicates"))
    if np.asarray(replicates).ndim <= 1:
        matrix = matrix.T
    n_rows, n_cols = matrix.shape
    if n_rows < 1:
        raise ValueError("replicates must be non-empty")
    truth_vec = np.atleast_1d(np.asarray(truth, dtype=np.float64))
    if truth_vec.size != n_cols:
        raise ValueError(
            f"truth has {truth_vec.size} entries for {n_cols} replicate columns"
        )
    if names is None:
        names = ("value",) if n_cols == 1 else tuple(f"p{j+1}" for j in range(n_cols))
    if len(names) != n_cols:
        raise ValueError(f"{len(names)} names for {n_cols} columns")
    if require_ci and n_rows < _MIN_REPS:
        raise ValueError(
            f"need at least {_MIN_REPS} replicate rows for percentile intervals, "
            f"got {n_rows}; pass require_ci=False for moment statistics only"
        )
    rows = _summarise_columns(matrix, truth_vec, names, box, n, with_ci=True)
    info = ConvergenceInfo(n=n, replications=n_rows, used=n_rows, excluded=0)
    return SimSummary(rows=tuple(rows), convergence=(info,))


def run_case(case, fit_starts=8):
    """Run the full study grid of one case.

    For each sample size, replicate r draws its sample from the r-th
    spawned child of that size's seed stream and fits with optimiser
    seed r.  Replicates that raise, produce a non-finite likelihood, or
    end with ``converged=False`` are excluded from the aggregates and
    counted in the per-size :class:`ConvergenceInfo`.
    """
    box = case.box if case.box is not None else DEFAULT_BOX
    t0 = time.perf_counter()
    truth_map = {
        "theta": case.truth.theta,
        "delta": case.truth.delta,
        "alpha": case.truth.alpha,
        "beta": case.truth.beta,
        "c_hat": effective_burr(case.truth).c,
    }
    size_streams = np.random.SeedSequence(case.seed).spawn(len(case.sample_sizes))
    all_rows = []
    infos = []
    for n, stream in zip(case.sample_sizes, size_streams):
        children = stream.spawn(case.replications)
        names = None
        kept = []
        excluded = 0
        for r in range(case.replications):
            x = sample(case.truth, n, seed=children[r])
            try:
                fit = fit_mle(x, box=box, starts=fit_starts, seed=r)
            except ValueError:
                excluded += 1
                continue
            if not (np.isfinite(fit.loglik) and fit.converged):
                excluded += 1
                continue
            names = fit.names + ("c_hat",)
            kept.append(fit.estimates + (fit.c_hat,))
        if not kept:
            raise RuntimeError(f"every replicate failed to fit at n={n}")
        matrix = np.array(kept)
        truth_vec = np.array([truth_map[name] for name in names])
        all_rows.extend(
            _summarise_columns(matrix, truth_vec, names, box, int(n), with_ci=True)
        )
        infos.append(
            ConvergenceInfo(
                n=int(n),
                replications=case.replications,
                used=len(kept),
                excluded=excluded,
            )
        )
    return SimSummary(
        rows=tuple(all_rows),
        convergence=tuple(infos),
        elapsed_s=time.perf_counter() - t0,
    )
