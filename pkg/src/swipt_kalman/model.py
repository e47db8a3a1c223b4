"""Scalar complex Gauss-Markov process.

The state evolves as ``x(n) = a x(n-1) + u(n)`` for ``n >= 0`` with
``x(-1) ~ CN(mu0, sigma02)`` and ``u(n) ~ CN(0, sigma_u2)`` i.i.d.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._validation import check_finite_real, check_horizon, check_nonnegative
from .streams import check_seed, complex_normal, make_rng


class Horizon(enum.Enum):
    """Marker for the asymptotic regime ``n -> infinity``."""

    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Horizon.INF


@dataclass(frozen=True)
class GaussMarkovModel:
    """Parameters of the first-order complex Gauss-Markov state.

    Attributes:
        a: Correlation coefficient between consecutive states, ``|a| < 1``.
        sigma_u2: Variance of the excitation noise ``u(n)``.
        mu0: Mean of the initial state ``x(-1)``.
        sigma02: Variance of the initial state ``x(-1)``.
    """

    a: float
    sigma_u2: float
    mu0: float = 0.0
    sigma02: float = 0.1

    def __post_init__(self):
        a = check_finite_real(self.a, "a")
        if abs(a) >= 1:
            raise ValueError(f"|a| must be < 1 (stable process), got a={a!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "sigma_u2", check_nonnegative(self.sigma_u2, "sigma_u2"))
        object.__setattr__(self, "mu0", check_finite_real(self.mu0, "mu0"))
        object.__setattr__(self, "sigma02", check_nonnegative(self.sigma02, "sigma02"))

    @property
    def sigma2(self) -> float:
        """Stationary variance ``sigma_u2 / (1 - a^2)``."""
        return asymptotic_variance(self)


@dataclass(frozen=True)
class Trajectory:
    states: np.ndarray
    seed: int

    @property
    def n_max(self) -> int:
        return len(self.states) - 1


def advance_state(model: GaussMarkovModel, x_prev, u):
    return model.a * x_prev + u


def asymptotic_variance(model: GaussMarkovModel) -> float:
    return model.sigma_u2 / (1.0 - model.a**2)


def second_moment(model: GaussMarkovModel, n) -> float:
    """``E{|x(n)|^2}``; for ``n=INF`` the stationary variance."""
    n = check_horizon(n)
    sigma2 = asymptotic_variance(model)
    if n is INF:
        return sigma2
    decay = model.a ** (2 * n + 2)
    return decay * (model.mu0**2 + model.sigma02) + sigma2 * (1.0 - decay)


def state_variance(model: GaussMarkovModel, n: int) -> float:
    """Variance of ``x(n)`` around its mean ``a^(n+1) mu0``."""
    decay = model.a ** (2 * n + 2)
    return decay * model.sigma02 + asymptotic_variance(model) * (1.0 - decay)


def sample_states(model: GaussMarkovModel, n_max: int, rng: np.random.Generator, size=None):
    """Draw ``x(0..n_max)`` for ``size`` independent realizations.

    Returns an array of shape ``(n_max + 1,)`` when ``size`` is None,
    otherwise ``(size, n_max + 1)``.
    """
    shape = () if size is None else (size,)
    x = complex_normal(rng, model.sigma02, shape, mean=model.mu0)
    out = np.empty(shape + (n_max + 1,), dtype=np.complex128)
    for n in range(n_max + 1):
        x = advance_state(model, x, complex_normal(rng, model.sigma_u2, shape))
        out[..., n] = x
    return out


def sample_trajectory(model: GaussMarkovModel, n_max: int, seed: int) -> Trajectory:
    n_max = check_horizon(n_max, "n_max")
    if n_max is INF:
        raise ValueError("n_max must be finite")
    seed = check_seed(seed)
    return Trajectory(states=sample_states(model, n_max, make_rng(seed)), seed=seed)
