"""Small shared helpers for argument handling."""

import numpy as np


def as_float_array(x, name="x"):
    """Coerce to a float64 ndarray, rejecting non-finite entries."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    return arr


def maybe_scalar(values, x):
    """Return a plain float when the caller passed a scalar."""
    if np.ndim(x) == 0:
        return float(values[0])
    return values


def check_positive(value, name):
    if not (np.isscalar(value) and np.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


def check_unit_open(value, name):
    if not (np.isscalar(value) and np.isfinite(value) and 0 < value < 1):
        raise ValueError(f"{name} must lie strictly inside (0, 1), got {value!r}")
