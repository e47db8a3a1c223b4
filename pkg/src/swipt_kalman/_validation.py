"""Input validation helpers shared by the parameter containers and estimators."""

from __future__ import annotations

import math
import numbers

import numpy as np


def check_finite_real(value, name: str) -> float:
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def check_nonnegative(value, name: str) -> float:
    value = check_finite_real(value, name)
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")
    return value


def check_positive(value, name: str) -> float:
    value = check_finite_real(value, name)
    if value <= 0:
        raise ValueError(f"{name} must be > 0, got {value!r}")
    return value


def check_interval(value, name: str, low: float, high: float, *, closed_low: bool = True) -> float:
    value = check_finite_real(value, name)
    ok_low = value >= low if closed_low else value > low
    if not (ok_low and value <= high):
        bracket = "[" if closed_low else "("
        raise ValueError(f"{name} must lie in {bracket}{low}, {high}], got {value!r}")
    return value


def check_complex(value, name: str) -> complex:
    if not isinstance(value, numbers.Number) or isinstance(value, (bool, np.bool_)):
        raise TypeError(f"{name} must be a number, got {type(value).__name__}")
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def check_horizon(n, name: str = "n"):
    """Accept a nonnegative integer time index or the ``INF`` marker."""
    from .model import INF

    if n is INF:
        return n
    if isinstance(n, (bool, np.bool_)) or not isinstance(n, numbers.Integral):
        raise TypeError(f"{name} must be a nonnegative integer or INF, got {n!r}")
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")
    return int(n)


def check_observations(Y) -> np.ndarray:
    """Coerce observation input to a 2-D complex array of shape (n_sequences, n_steps).

    A 1-D input is read as a single sequence. Complex data is the normal case
    here, which is why sklearn's ``check_array`` (real-only) is not used.
    """
    Y = np.asarray(Y)
    if Y.dtype == object or not np.issubdtype(Y.dtype, np.number):
        raise TypeError(f"observations must be numeric, got dtype {Y.dtype}")
    if Y.ndim == 1:
        Y = Y[np.newaxis, :]
    if Y.ndim != 2:
        raise ValueError(f"observations must be 1-D or 2-D, got shape {Y.shape}")
    if Y.shape[1] == 0:
        raise ValueError("observations must contain at least one time step")
    Y = Y.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(Y)):
        raise ValueError("observations contain NaN or infinity")
    return Y
