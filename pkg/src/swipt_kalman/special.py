"""Exponential integral and modified Bessel function of order zero.

Both are implemented from their series and asymptotic forms so that the
numeric contract does not depend on which SciPy build is installed.
"""

from __future__ import annotations

import math

import numpy as np

EULER_GAMMA = 0.57721566490153286061

_EPS = 1e-16
_MAX_TERMS = 500


def _e1_series(x: float) -> float:
    # E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    total = 0.0
    term = 1.0
    for k in range(1, _MAX_TERMS):
        term *= -x / k
        contrib = term / k
        total += contrib
        if abs(contrib) < _EPS * abs(total):
            break
    return -EULER_GAMMA - math.log(x) - total


def _scaled_e1_cf(x: float) -> float:
    # e^x E1(x) by the modified Lentz continued fraction
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"continued fraction for E1({x}) did not converge")


def _check_e1_arg(x) -> float:
    x = float(x)
    if not x > 0:
        raise ValueError(f"E1 is defined here for x > 0, got {x}")
    return x


def exp_integral_e1(x) -> float:
    """``E1(x) = Gamma(0, x)`` for ``x > 0``."""
    x = _check_e1_arg(x)
    if x <= 1.0:
        return _e1_series(x)
    return _scaled_e1_cf(x) * math.exp(-x)


def scaled_exp_integral_e1(x) -> float:
    """``exp(x) E1(x)``, finite for arguments where ``exp(x)`` alone overflows."""
    x = _check_e1_arg(x)
    if x <= 1.0:
        return math.exp(x) * _e1_series(x)
    return _scaled_e1_cf(x)


# switch from the power series to the asymptotic expansion
_I0_SWITCH = 30.0


def _i0_series(x: float) -> float:
    q = 0.25 * x * x
    total = 1.0
    term = 1.0
    for k in range(1, _MAX_TERMS):
        term *= q / (k * k)
        total += term
        if term < _EPS * total:
            break
    return total


def _i0e_asymptotic(x: float) -> float:
    # e^-x I0(x) ~ (2 pi x)^-1/2 sum_k ((2k-1)!!)^2 / (k! (8x)^k)
    total = 1.0
    term = 1.0
    for k in range(1, _MAX_TERMS):
        nxt = term * (2 * k - 1) ** 2 / (k * 8.0 * x)
        if nxt > term:
            break
        term = nxt
        total += term
        if term < _EPS * total:
            break
    return total / math.sqrt(2.0 * math.pi * x)


def _i0e_scalar(x: float) -> float:
    x = abs(x)
    if x <= _I0_SWITCH:
        return _i0_series(x) * math.exp(-x)
    return _i0e_asymptotic(x)


def bessel_i0(x):
    """Modified Bessel function ``I0``; accepts scalars or arrays."""
    arr = np.abs(np.asarray(x, dtype=float))
    out = np.vectorize(lambda v: _i0_series(v) if v <= _I0_SWITCH else _i0e_asymptotic(v) * math.exp(v), otypes=[float])(arr)
    return out if out.ndim else float(out)


def bessel_i0e(x):
    """Exponentially scaled ``exp(-|x|) I0(x)``."""
    arr = np.asarray(x, dtype=float)
    out = np.vectorize(_i0e_scalar, otypes=[float])(arr)
    return out if out.ndim else float(out)
