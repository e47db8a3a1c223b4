"""CDF bounds for the MMSE under Rayleigh block fading, and their means.

With the prior MMSE ``M(n|n-1)`` frozen at a constant ``c``, the posterior
MMSE is ``sigma_e^2 / (sigma_e^2 / c + rho |h(n)|^2)`` and its CDF is

    F(c, x) = exp(-(lam sigma_e^2 / rho) (1/x - 1/c))   for x < c,   1 otherwise.

``F`` decreases in ``c``: a larger frozen prior makes the MMSE stochastically
larger. The two constants are ``c_low = sigma_u2 (1 + a^2)`` and
``c_up = sigma_u2 / (1 - a^2)``, so ``F(c_low, .)`` is the pointwise upper
envelope and ``F(c_up, .)`` the pointwise lower one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_positive
from .channel import ReceiverConfig, effective_noise_variance
from .model import GaussMarkovModel
from .special import scaled_exp_integral_e1


class UndefinedBoundError(ValueError):
    """The bounds need an estimation branch (``rho > 0``)."""


@dataclass(frozen=True)
class CdfBound:
    c: float
    lam: float
    sigma_e2: float
    rho: float

    def __post_init__(self):
        check_positive(self.c, "c")
        check_positive(self.lam, "lam")
        if self.rho <= 0:
            raise UndefinedBoundError("rho must be > 0: without an estimation branch there is no MMSE to bound")

    @property
    def rate(self) -> float:
        """``lam sigma_e^2 / rho``."""
        return self.lam * self.sigma_e2 / self.rho

    def __call__(self, x):
        return cdf_bound_eval(self, x)

    def mean(self) -> float:
        return mean_bound(self.c, self.lam, self.sigma_e2, self.rho)


def cdf_bound_eval(b: CdfBound, x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("x must be > 0")
    with np.errstate(over="ignore", under="ignore"):
        expo = -b.rate * (1.0 / x - 1.0 / b.c)
        out = np.where(x < b.c, np.exp(np.minimum(expo, 0.0)), 1.0)
    return out if out.ndim else float(out)


def theorem1_bounds(model: GaussMarkovModel, cfg: ReceiverConfig, lam: float):
    """The two frozen-prior bounds ``(c_low, c_up)``.

    Returns ``(lower, upper)`` named after their constants: ``lower`` has
    ``c = sigma_u2 (1 + a^2)`` and ``upper`` has ``c = sigma_u2 / (1 - a^2)``.
    As CDFs, ``upper(x) <= lower(x)`` everywhere.
    """
    if cfg.rho <= 0:
        raise UndefinedBoundError("rho must be > 0")
    sigma_e2 = effective_noise_variance(cfg)
    a2 = model.a**2
    lower = CdfBound(c=model.sigma_u2 * (1.0 + a2), lam=lam, sigma_e2=sigma_e2, rho=cfg.rho)
    upper = CdfBound(c=model.sigma_u2 / (1.0 - a2), lam=lam, sigma_e2=sigma_e2, rho=cfg.rho)
    return lower, upper


def mean_bound(c: float, lam: float, sigma_e2: float, rho: float) -> float:
    """Mean of the frozen-prior MMSE, ``int_0^c (1 - F(c, x)) dx``.

    Evaluates ``k exp(k/c) E1(k/c)`` with ``k = lam sigma_e^2 / rho`` through
    the scaled exponential integral, which stays finite where ``exp(k/c)``
    would overflow.
    """
    check_positive(c, "c")
    if rho <= 0:
        raise UndefinedBoundError("rho must be > 0")
    k = lam * sigma_e2 / rho
    if k == 0:
        return c
    return k * scaled_exp_integral_e1(k / c)


def grid(lower: CdfBound, upper: CdfBound, points: int = 512) -> np.ndarray:
    """Log-spaced evaluation grid on ``[c_low / 100, c_up]``."""
    lo = min(lower.c, upper.c)
    hi = max(lower.c, upper.c)
    return np.geomspace(lo / 100.0, hi, points)


@dataclass(frozen=True)
class EmpiricalCdf:
    sorted_samples: np.ndarray

    @property
    def n_samples(self) -> int:
        return len(self.sorted_samples)

    def __call__(self, x):
        out = np.searchsorted(self.sorted_samples, np.asarray(x, dtype=float), side="right") / self.n_samples
        return out if np.ndim(out) else float(out)


def empirical_cdf(samples) -> EmpiricalCdf:
    arr = np.sort(np.asarray(samples, dtype=float).ravel())
    if arr.size == 0:
        raise ValueError("empirical_cdf needs at least one sample")
    return EmpiricalCdf(sorted_samples=arr)


def ks_band(n_samples: int, confidence: float = 0.99) -> float:
    """Half-width of the two-sided Kolmogorov-Smirnov band (asymptotic)."""
    from scipy.special import kolmogi

    return float(kolmogi(1.0 - confidence)) / math.sqrt(n_samples)
