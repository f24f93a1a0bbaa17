"""Command-line interface.

Subcommands
-----------
describe   six-number summary of a dataset
fit        maximum-likelihood fit of one model
compare    fit several models, rank by AIC
simulate   Monte Carlo study of estimator quality
curves     evaluate pdf/cdf/survival/hazard on a grid
sample     draw random variates

Every command is deterministic for fixed flags (no timestamps, fixed
seeds), so identical invocations produce identical bytes.  Output is
JSON (default) or RFC-4180-style CSV with a header row; CSV floats use
6 significant digits unless --precision says otherwise.  Errors are
emitted as structured JSON records on stderr with a nonzero exit
status; model comparison reports per-model failures inline and keeps
going with the survivors.
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import distribution, selection, simstudy
from .competitors import COMPETITORS, get_family
from .data import describe as describe_values
from .data import ingest, load_builtin
from .distribution import NgFiskParams
from .estimation import DEFAULT_BOX, fit_mle
from .simstudy import SimCase

__all__ = ["main", "RunConfig"]

_COMMANDS = ("describe", "fit", "compare", "simulate", "curves", "sample")
_MODEL_KEYS = ("ngfisk",) + tuple(sorted(COMPETITORS))


@dataclass(frozen=True)
class RunConfig:
    """Validated run settings shared by every subcommand."""

    command: str
    models: tuple
    seed: int
    fmt: str
    precision: int
    box_overrides: tuple

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        for name in self.models:
            _canonical_model(name)
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")


def _canonical_model(name):
    if name == "ngfisk":
        return "ngfisk"
    return get_family(name).key


# ---------------------------------------------------------------- #
# rendering
# ---------------------------------------------------------------- #


def _jsonable(value):
    """Recursively convert to plain JSON types; non-finite floats
    become null so the output stays valid JSON."""
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if math.isfinite(v) else None
    return value


def _emit_json(obj, out):
    out.write(json.dumps(_jsonable(obj), indent=2, allow_nan=False))
    out.write("\n")


def _cell(value, precision):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            return ""
        return format(v, f".{precision}g")
    return str(value)


def _emit_csv(header, rows, precision, out):
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v, precision) for v in row])


def _error(message, command, model=None):
    if isinstance(message, KeyError) and message.args:
        message = message.args[0]
    record = {"Error": {"command": command, "message": str(message)}}
    if model is not None:
        record["Error"]["model"] = model
    sys.stderr.write(json.dumps(record) + "\n")


# ---------------------------------------------------------------- #
# shared flag plumbing
# ---------------------------------------------------------------- #


def _load_dataset(spec):
    if spec.startswith("builtin:"):
        return load_builtin(spec.split(":", 1)[1])
    return ingest(spec)


def _parse_truth(text):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 4:
        raise ValueError(
            f"--truth needs 4 comma-separated values alpha,beta,theta,delta, "
            f"got {len(parts)}"
        )
    alpha, beta, theta, delta = (float(p) for p in parts)
    return NgFiskParams(alpha=alpha, beta=beta, theta=theta, delta=delta)


def _parse_box_overrides(items):
    out = []
    for item in items or ():
        try:
            name, interval = item.split("=", 1)
            lo_s, hi_s = interval.split(":", 1)
            out.append((name.strip(), float(lo_s), float(hi_s)))
        except ValueError:
            raise ValueError(
                f"--box expects NAME=LO:HI, got {item!r}"
            ) from None
    return tuple(out)


def _apply_overrides(box, overrides, strict=True):
    for name, lo, hi in overrides:
        if name in box.names:
            box = box.replace(name, lo, hi)
        elif strict:
            raise ValueError(
                f"--box name {name!r} not in this model's parameters {box.names}"
            )
    return box


def _parse_grid(text):
    if ":" in text:
        lo_s, hi_s, num_s = text.split(":", 2)
        lo, hi, num = float(lo_s), float(hi_s), int(num_s)
        if num < 2 or hi <= lo:
            raise ValueError(f"--grid LO:HI:NUM needs LO < HI and NUM >= 2, got {text!r}")
        values = np.linspace(lo, hi, num)
    else:
        values = np.array([float(p) for p in text.split(",") if p.strip()])
    if values.size == 0:
        raise ValueError("--grid produced no points")
    if np.any(values < 0.0):
        raise ValueError("grid values must be non-negative")
    if np.any(np.diff(values) <= 0.0):
        raise ValueError("grid values must be strictly ascending")
    return values


def _fit_payload(fit):
    parameters = [
        {
            "name": name,
            "estimate": est,
            "std_error": se,
            "ci95": list(ci),
            "at_boundary": flag,
        }
        for name, est, se, ci, flag in zip(
            fit.names, fit.estimates, fit.std_errors, fit.ci95, fit.at_boundary
        )
    ]
    payload = {
        "model": fit.model,
        "n_obs": fit.n_obs,
        "n_starts": fit.n_starts,
        "converged": fit.converged,
        "loglik": fit.loglik,
        "nll": fit.nll,
        "parameters": parameters,
    }
    if fit.c_hat is not None:
        payload["c_hat"] = fit.c_hat
        payload["ridge_flat"] = fit.ridge_flat
    return payload


_FIT_HEADER = (
    "model", "n_obs", "converged", "loglik", "nll", "c_hat", "ridge_flat",
    "parameter", "estimate", "std_error", "ci_low", "ci_high", "at_boundary",
)


def _fit_rows(fit):
    rows = []
    for name, est, se, ci, flag in zip(
        fit.names, fit.estimates, fit.std_errors, fit.ci95, fit.at_boundary
    ):
        rows.append(
            (
                fit.model, fit.n_obs, fit.converged, fit.loglik, fit.nll,
                fit.c_hat, fit.ridge_flat, name, est, se, ci[0], ci[1], flag,
            )
        )
    return rows


# ---------------------------------------------------------------- #
# subcommands
# ---------------------------------------------------------------- #


def _cmd_describe(args, config, out):
    data = _load_dataset(args.data)
    summary = describe_values(data.values)
    if config.fmt == "json":
        _emit_json(
            {
                "Dataset": {"source": data.source, "n": data.n},
                "DataSummary": {
                    "n": summary.n,
                    "minimum": summary.minimum,
                    "q1": summary.q1,
                    "median": summary.median,
                    "mean": summary.mean,
                    "q3": summary.q3,
                    "maximum": summary.maximum,
                },
            },
            out,
        )
    else:
        _emit_csv(
            ("n", "minimum", "q1", "median", "mean", "q3", "maximum"),
            [
                (
                    summary.n, summary.minimum, summary.q1, summary.median,
                    summary.mean, summary.q3, summary.maximum,
                )
            ],
            config.precision,
            out,
        )
    return 0


def _fit_one(key, values, seed, overrides, starts):
    if key == "ngfisk":
        box = _apply_overrides(DEFAULT_BOX, overrides)
        return fit_mle(values, box=box, starts=starts or 8, seed=seed)
    from .competitors import fit_competitor

    family = get_family(key)
    box = _apply_overrides(family.box, overrides)
    return fit_competitor(key, values, starts=starts or 12, seed=seed, box=box)


def _cmd_fit(args, config, out):
    data = _load_dataset(args.data)
    key = _canonical_model(args.model)
    fit = _fit_one(key, data.array, config.seed, config.box_overrides, args.starts)
    if config.fmt == "json":
        _emit_json({"FitResult": _fit_payload(fit)}, out)
    else:
        _emit_csv(_FIT_HEADER, _fit_rows(fit), config.precision, out)
    return 0


def _cmd_compare(args, config, out):
    data = _load_dataset(args.data)
    keys = [_canonical_model(m) for m in config.models]
    for name, _, _ in config.box_overrides:
        boxes = [DEFAULT_BOX if k == "ngfisk" else get_family(k).box for k in keys]
        if not any(name in b.names for b in boxes):
            raise ValueError(f"--box name {name!r} matches no requested model")
    scores = []
    errors = []
    for key in keys:
        try:
            fit = _fit_one(key, data.array, config.seed, config.box_overrides,
                           args.starts)
            label = "NG-Fisk" if key == "ngfisk" else get_family(key).label
            if key == "ngfisk":
                params = NgFiskParams(**fit.as_dict())
                cdf = lambda v, p=params: distribution.cdf(p, v)
            else:
                from .competitors import competitor_cdf, competitor_from_fit

                fitted = competitor_from_fit(fit)
                cdf = lambda v, m=fitted: competitor_cdf(m, v)
            cm = selection.cramer_von_mises(data.array, cdf)
            ic = selection.info_criteria(fit.nll, len(fit.names), data.n)
            scores.append(
                selection.ModelScore(
                    name=label, k=len(fit.names), n=data.n, nll=fit.nll,
                    aic=ic.aic, bic=ic.bic, caic=ic.caic, hqic=ic.hqic, cm=cm,
                    key=key, estimates=fit.estimates, param_names=fit.names,
                )
            )
        except (ValueError, RuntimeError) as exc:
            errors.append({"command": "compare", "model": key, "message": str(exc)})
            _error(exc, "compare", model=key)
    ranked = selection.rank_models(scores) if len(scores) > 1 else list(scores)
    if config.fmt == "json":
        payload = {
            "ModelScore": [
                {
                    "rank": i + 1,
                    "name": s.name,
                    "k": s.k,
                    "n": s.n,
                    "nll": s.nll,
                    "aic": s.aic,
                    "bic": s.bic,
                    "caic": s.caic,
                    "hqic": s.hqic,
                    "cm": s.cm,
                }
                for i, s in enumerate(ranked)
            ],
            "errors": errors,
        }
        _emit_json(payload, out)
    else:
        _emit_csv(
            ("rank", "name", "k", "n", "nll", "aic", "bic", "caic", "hqic", "cm"),
            [
                (
                    i + 1, s.name, s.k, s.n, s.nll, s.aic, s.bic, s.caic,
                    s.hqic, s.cm,
                )
                for i, s in enumerate(ranked)
            ],
            config.precision,
            out,
        )
    return 1 if errors else 0


def _cmd_simulate(args, config, out):
    truth = _parse_truth(args.truth)
    sizes = tuple(int(p) for p in args.n.split(",") if p.strip())
    box = _apply_overrides(DEFAULT_BOX, config.box_overrides)
    case = SimCase(
        truth=truth,
        sample_sizes=sizes,
        replications=args.reps,
        seed=config.seed,
        box=box,
    )
    summary = simstudy.run_case(case, fit_starts=args.starts or 8)
    if config.fmt == "json":
        payload = {
            "SimCase": {
                "truth": {
                    "alpha": truth.alpha,
                    "beta": truth.beta,
                    "theta": truth.theta,
                    "delta": truth.delta,
                },
                "sample_sizes": list(case.sample_sizes),
                "replications": case.replications,
                "seed": case.seed,
            },
            "SimSummary": {
                "rows": [
                    {
                        "n": r.n,
                        "parameter": r.parameter,
                        "truth": r.truth,
                        "mle_mean": r.mle_mean,
                        "bias": r.bias,
                        "variance": r.variance,
                        "mse": r.mse,
                        "ci95": list(r.ci95) if r.ci95 is not None else None,
                    }
                    for r in summary.rows
                ],
                "convergence": [
                    {
                        "n": c.n,
                        "replications": c.replications,
                        "used": c.used,
                        "excluded": c.excluded,
                        "rate": c.rate,
                    }
                    for c in summary.convergence
                ],
            },
        }
        _emit_json(payload, out)
    else:
        conv = {c.n: c for c in summary.convergence}
        rows = []
        for r in summary.rows:
            c = conv[r.n]
            ci_lo, ci_hi = (r.ci95 if r.ci95 is not None else (None, None))
            rows.append(
                (
                    r.n, r.parameter, r.truth, r.mle_mean, r.bias, r.variance,
                    r.mse, ci_lo, ci_hi, c.replications, c.used, c.excluded,
                    c.rate,
                )
            )
        _emit_csv(
            (
                "n", "parameter", "truth", "mle_mean", "bias", "variance",
                "mse", "ci_low", "ci_high", "replications", "used",
                "excluded", "convergence_rate",
            ),
            rows,
            config.precision,
            out,
        )
    return 0


_CURVE_COLUMNS = ("pdf", "cdf", "survival", "hazard")


def _cmd_curves(args, config, out):
    params = _parse_truth(args.params)
    grid = _parse_grid(args.grid)
    surv, haz, _, _ = distribution.survival_hazard_chf_rhr(params, grid)
    table = {
        "pdf": np.atleast_1d(distribution.pdf(params, grid)),
        "cdf": np.atleast_1d(distribution.cdf(params, grid)),
        "survival": np.atleast_1d(surv),
        "hazard": np.atleast_1d(haz),
    }
    rows = []
    for i, x in enumerate(grid):
        flags = [c for c in _CURVE_COLUMNS if not math.isfinite(float(table[c][i]))]
        rows.append(
            {
                "x": float(x),
                **{
                    c: (float(table[c][i]) if c not in flags else None)
                    for c in _CURVE_COLUMNS
                },
                "flag": ";".join(flags),
            }
        )
    if config.fmt == "json":
        _emit_json({"Curves": rows}, out)
    else:
        _emit_csv(
            ("x",) + _CURVE_COLUMNS + ("flag",),
            [
                tuple(r[c] for c in ("x",) + _CURVE_COLUMNS) + (r["flag"],)
                for r in rows
            ],
            config.precision,
            out,
        )
    return 0


def _cmd_sample(args, config, out):
    params = _parse_truth(args.params)
    n = int(args.n)
    if n < 0:
        raise ValueError(f"--n must be >= 0, got {n}")
    draws = distribution.sample(params, n, seed=config.seed)
    for v in np.atleast_1d(draws) if n else ():
        out.write(repr(float(v)))
        out.write("\n")
    return 0


# ---------------------------------------------------------------- #
# argument parsing
# ---------------------------------------------------------------- #


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ngfisk",
        description="Tilted log-logistic lifetime distribution toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--precision", type=int, default=6,
                       help="significant digits in CSV output")
        p.add_argument("--box", action="append", metavar="NAME=LO:HI",
                       help="override one parameter's bounds (repeatable)")

    p = sub.add_parser("describe", help="six-number summary of a dataset")
    p.add_argument("--data", required=True, metavar="PATH|builtin:dataFT")
    add_common(p)

    p = sub.add_parser("fit", help="fit one model by maximum likelihood")
    p.add_argument("--data", required=True, metavar="PATH|builtin:dataFT")
    p.add_argument("--model", default="ngfisk",
                   help="ngfisk or a competitor (nexfw, fw, kuw, zw, kwp)")
    p.add_argument("--starts", type=int, default=None)
    add_common(p)

    p = sub.add_parser("compare", help="fit several models and rank by AIC")
    p.add_argument("--data", required=True, metavar="PATH|builtin:dataFT")
    p.add_argument("--model", action="append", default=None,
                   help="model to include (repeatable; default: all)")
    p.add_argument("--starts", type=int, default=None)
    add_common(p)

    p = sub.add_parser("simulate", help="Monte Carlo study of estimator quality")
    p.add_argument("--truth", required=True, metavar="ALPHA,BETA,THETA,DELTA")
    p.add_argument("--n", default="25,50,100,150,250,500",
                   help="comma-separated sample sizes")
    p.add_argument("--reps", type=int, default=200,
                   help="replications per sample size (>= 40; 1000 for full scale)")
    p.add_argument("--starts", type=int, default=None)
    add_common(p)

    p = sub.add_parser("curves", help="evaluate pdf/cdf/survival/hazard on a grid")
    p.add_argument("--params", required=True, metavar="ALPHA,BETA,THETA,DELTA")
    p.add_argument("--grid", default="0:5:101", metavar="LO:HI:NUM|X1,X2,...")
    add_common(p)

    p = sub.add_parser("sample", help="draw random variates")
    p.add_argument("--params", required=True, metavar="ALPHA,BETA,THETA,DELTA")
    p.add_argument("--n", required=True, type=int)
    add_common(p)

    return parser


_HANDLERS = {
    "describe": _cmd_describe,
    "fit": _cmd_fit,
    "compare": _cmd_compare,
    "simulate": _cmd_simulate,
    "curves": _cmd_curves,
    "sample": _cmd_sample,
}


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compare":
            models = []
            for item in args.model or list(_MODEL_KEYS):
                models.extend(m for m in item.split(",") if m)
        elif args.command == "fit":
            models = [args.model]
        else:
            models = []
        config = RunConfig(
            command=args.command,
            models=tuple(models),
            seed=args.seed,
            fmt=args.format,
            precision=args.precision,
            box_overrides=_parse_box_overrides(args.box),
        )
    except (ValueError, KeyError) as exc:
        _error(exc, args.command)
        return 1
    try:
        return _HANDLERS[args.command](args, config, out)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        _error(exc, args.command)
        return 1


if __name__ == "__main__":
    sys.exit(main())
