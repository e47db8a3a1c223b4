"""Channel gains, the power-splitting receiver and its effective noise."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ._validation import check_complex, check_interval, check_nonnegative, check_positive
from .streams import complex_normal


@dataclass(frozen=True)
class ReceiverConfig:
    """Power-splitting receiver.

    A fraction ``rho`` of the received power feeds the estimator, the rest
    feeds the harvester with efficiency ``zeta``. The baseband conversion adds
    circuit noise of variance ``sigma_q2``.
    """

    rho: float
    sigma_v2: float = 1.0
    sigma_q2: float = 0.5
    zeta: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "rho", check_interval(self.rho, "rho", 0.0, 1.0))
        object.__setattr__(self, "sigma_v2", check_nonnegative(self.sigma_v2, "sigma_v2"))
        object.__setattr__(self, "sigma_q2", check_nonnegative(self.sigma_q2, "sigma_q2"))
        object.__setattr__(self, "zeta", check_interval(self.zeta, "zeta", 0.0, 1.0, closed_low=False))

    @property
    def sigma_e2(self) -> float:
        return effective_noise_variance(self)


@dataclass(frozen=True)
class StaticChannel:
    """Constant complex gain known at the receiver."""

    h: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "h", check_complex(self.h, "h"))

    @property
    def gain2(self) -> float:
        return abs(self.h) ** 2


@dataclass(frozen=True)
class RayleighChannel:
    """Block fading with ``|h(n)|^2`` exponential of rate ``lam`` (mean ``1/lam``)."""

    lam: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "lam", check_positive(self.lam, "lam"))

    @property
    def mean_gain2(self) -> float:
        return 1.0 / self.lam


ChannelSpec = Union[StaticChannel, RayleighChannel]


@dataclass(frozen=True)
class ObservationSample:
    y: complex
    y_est: complex
    e: complex


def effective_noise_variance(cfg: ReceiverConfig) -> float:
    return cfg.rho * cfg.sigma_v2 + cfg.sigma_q2


def sample_block_gain(lam: float, rng: np.random.Generator, size=None):
    """Draw Rayleigh block gains: exponential power with rate ``lam``, uniform phase."""
    lam = check_positive(lam, "lam")
    power = rng.exponential(1.0 / lam, size)
    phase = rng.uniform(0.0, 2.0 * np.pi, size)
    return np.sqrt(power) * np.exp(1j * phase)


def channel_gains(channel: ChannelSpec, rng: np.random.Generator, size=None):
    if isinstance(channel, StaticChannel):
        return np.full(() if size is None else size, channel.h, dtype=np.complex128)
    return sample_block_gain(channel.lam, rng, size)


def observe(x, h, cfg: ReceiverConfig, rng: np.random.Generator) -> ObservationSample:
    """Pass ``x`` through the channel and split off the estimation branch.

    Works elementwise on arrays; ``y``, ``y_est`` and ``e`` then share the
    broadcast shape of ``x`` and ``h``.
    """
    shape = np.broadcast(np.asarray(x), np.asarray(h)).shape
    v = complex_normal(rng, cfg.sigma_v2, shape)
    q = complex_normal(rng, cfg.sigma_q2, shape)
    sqrt_rho = np.sqrt(cfg.rho)
    y = h * x + v
    y_est = sqrt_rho * y + q
    e = sqrt_rho * v + q
    return ObservationSample(y=y, y_est=y_est, e=e)
