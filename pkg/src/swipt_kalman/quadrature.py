"""Adaptive Gauss-Kronrod (7/15) quadrature over [0, inf)."""

from __future__ import annotations

import heapq
import math
from typing import Callable

import numpy as np

# Kronrod abscissae on [-1, 1], nonnegative half, descending; odd-indexed ones are Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
# Gauss nodes sit at Kronrod indices 1, 3, 5, 7(centre), 9, 11, 13
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]

DEFAULT_TOL = 1e-9
MAX_INTERVALS = 4000


class IntegrationError(ArithmeticError):
    """Adaptive quadrature exhausted its interval budget."""

    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


def gauss_kronrod(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float):
    """One G7/K15 panel: returns ``(kronrod_value, |kronrod - gauss|)``."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    fx = np.asarray(f(mid + half * NODES), dtype=float)
    k = half * float(np.dot(KRONROD_WEIGHTS, fx))
    g = half * float(np.dot(GAUSS_WEIGHTS, fx))
    return k, abs(k - g)


def integrate_interval(f, lo: float, hi: float, tol: float = DEFAULT_TOL, max_intervals: int = MAX_INTERVALS):
    """Adaptive bisection of the worst panel until ``err <= max(tol, tol |value|)``."""
    value, err = gauss_kronrod(f, lo, hi)
    heap = [(-err, lo, hi, value, err)]
    values = {(lo, hi): value}
    total_err = err
    while total_err > max(tol, tol * abs(math.fsum(values.values()))):
        if len(heap) >= max_intervals:
            total = math.fsum(values.values())
            raise IntegrationError(
                f"quadrature did not converge: error estimate {total_err:.3e} after {len(heap)} intervals",
                total,
                total_err,
            )
        _, a, b, v, e = heapq.heappop(heap)
        del values[(a, b)]
        m = 0.5 * (a + b)
        v1, e1 = gauss_kronrod(f, a, m)
        v2, e2 = gauss_kronrod(f, m, b)
        heapq.heappush(heap, (-e1, a, m, v1, e1))
        heapq.heappush(heap, (-e2, m, b, v2, e2))
        values[(a, m)] = v1
        values[(m, b)] = v2
        total_err = math.fsum(item[4] for item in heap)
    return math.fsum(values.values()), total_err


def integrate_semi_infinite(integrand, tol: float = DEFAULT_TOL, scale: float = 1.0, max_intervals: int = MAX_INTERVALS):
    """Integrate ``integrand`` over ``[0, inf)``.

    The substitution ``x = scale t / (1 - t)`` maps the half line onto
    ``(0, 1)``; ``scale`` should be of the order of where the mass lives.
    Kronrod nodes are interior, so neither endpoint is evaluated.

    Returns:
        ``(value, error_estimate)``.

    Raises:
        IntegrationError: if the tolerance is not met within ``max_intervals``.
    """
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if not scale > 0:
        raise ValueError(f"scale must be > 0, got {scale}")

    def mapped(t):
        one_minus = 1.0 - t
        with np.errstate(divide="ignore", over="ignore", invalid="ignore", under="ignore"):
            x = scale * t / one_minus
            y = np.asarray(integrand(x), dtype=float) * (scale / (one_minus * one_minus))
        # integrand decays faster than the Jacobian grows; nan from inf*0 is that limit
        return np.where(np.isfinite(y), y, 0.0)

    return integrate_interval(mapped, 0.0, 1.0, tol=tol, max_intervals=max_intervals)
