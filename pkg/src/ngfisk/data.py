"""Bundled data and plain-text ingestion.

``DATA_FT`` is the classic set of 101 stress-rupture lifetimes (in
hours) of Kevlar 49/epoxy strands under sustained 90% load, stored in
its published order.
"""

from dataclasses import dataclass

import numpy as np

from ._util import as_float_array

__all__ = ["DATA_FT", "Dataset", "load_builtin", "ingest", "describe", "DataSummary"]

DATA_FT = (
    4.69, 0.01, 1.51, 0.02, 7.89, 0.03, 1.11, 0.04, 0.05, 0.06,
    0.07, 0.07, 0.08, 0.09, 0.09, 0.10, 0.10, 0.11, 0.11, 0.12,
    0.13, 0.18, 0.19, 0.20, 0.23, 0.24, 0.24, 0.29, 0.34, 0.35,
    0.36, 0.38, 0.40, 0.42, 0.43, 0.52, 0.54, 0.56, 0.60, 0.60,
    0.63, 0.65, 0.67, 0.68, 0.72, 0.72, 0.72, 0.73, 0.79, 0.79,
    0.80, 0.80, 0.83, 0.85, 0.90, 0.92, 0.95, 0.99, 1.00, 1.01,
    1.02, 1.03, 1.05, 1.10, 1.10, 0.03, 1.15, 1.18, 1.20, 1.29,
    1.31, 1.33, 1.34, 1.40, 1.43, 1.45, 1.50, 0.02, 1.52, 1.53,
    1.54, 1.54, 1.55, 1.58, 1.60, 1.63, 1.64, 1.80, 1.80, 1.81,
    2.02, 2.05, 2.14, 2.17, 2.33, 3.03, 3.03, 3.34, 4.20, 0.01,
    0.02,
)


@dataclass(frozen=True)
class Dataset:
    """Positive observations plus where they came from."""

    values: tuple
    source: str

    def __post_init__(self):
        if len(self.values) < 1:
            raise ValueError("a dataset needs at least one value")
        if any(not v > 0.0 for v in self.values):
            raise ValueError("dataset values must be strictly positive")

    @property
    def n(self):
        return len(self.values)

    @property
    def array(self):
        return np.asarray(self.values, dtype=np.float64)


_BUILTINS = {"dataFT": Dataset(values=DATA_FT, source="builtin:dataFT")}


def load_builtin(name):
    """Fetch a bundled dataset by name (currently just ``dataFT``)."""
    if name not in _BUILTINS:
        raise KeyError(f"unknown builtin dataset {name!r}; available: "
                       f"{sorted(_BUILTINS)}")
    return _BUILTINS[name]


def ingest(path):
    """Read a plain-text dataset: one or more numbers per line, separated
    by commas and/or whitespace.  Blank lines are skipped.

    Raises ValueError naming the first offending line and token, so a
    bad file points at itself.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    values = []
    for lineno, line in enumerate(lines, start=1):
        for token in line.replace(",", " ").split():
            try:
                value = float(token)
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: could not parse {token!r} as a number"
                ) from None
            if not value > 0.0:
                raise ValueError(
                    f"{path}: line {lineno}: value {token!r} is not strictly positive"
                )
            values.append(value)
    if not values:
        raise ValueError(f"{path}: no numeric values found")
    return Dataset(values=tuple(values), source=str(path))


@dataclass(frozen=True)
class DataSummary:
    """Location summary in the conventional six-number layout."""

    n: int
    minimum: float
    q1: float
    median: float
    mean: float
    q3: float
    maximum: float


def describe(values):
    """Six-number summary; quartiles use linear interpolation (the
    numpy/R default), which is the convention the bundled dataset's
    published figures follow."""
    arr = as_float_array(values, "values")
    q1, med, q3 = np.quantile(arr, [0.25, 0.5, 0.75], method="linear")
    return DataSummary(
        n=int(arr.size),
        minimum=float(arr.min()),
        q1=float(q1),
        median=float(med),
        mean=float(arr.mean()),
        q3=float(q3),
        maximum=float(arr.max()),
    )
