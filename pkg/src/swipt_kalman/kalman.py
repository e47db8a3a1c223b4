"""Linear Kalman filter on the estimation branch of the power splitter.

The filter fields may be Python scalars or NumPy arrays; arrays run many
independent realizations in lockstep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .channel import (
    ChannelSpec,
    ReceiverConfig,
    StaticChannel,
    channel_gains,
    effective_noise_variance,
    observe,
)
from .model import GaussMarkovModel, advance_state, asymptotic_variance
from .streams import as_generator, complex_normal

# relative step below which the MMSE sequence counts as converged
CONVERGENCE_RTOL = 1e-12


class DegenerateUpdateError(ZeroDivisionError):
    """Raised when both the noise variance and the signal term of the update vanish."""


@dataclass(frozen=True)
class FilterState:
    x_pred: complex
    m_pred: float
    gain: complex
    x_upd: complex
    m_upd: float
    n: int


@dataclass(frozen=True)
class SteadyState:
    m_inf: float
    q1: float
    q2: float
    q3: float


def init_filter(model: GaussMarkovModel) -> FilterState:
    return FilterState(
        x_pred=complex(model.mu0),
        m_pred=model.sigma02,
        gain=0j,
        x_upd=complex(model.mu0),
        m_upd=model.sigma02,
        n=-1,
    )


def predict(state: FilterState, model: GaussMarkovModel) -> FilterState:
    return replace(
        state,
        x_pred=model.a * state.x_upd,
        m_pred=model.a**2 * state.m_upd + model.sigma_u2,
        gain=0j,
        n=state.n + 1,
    )


def _correct(state, y_est, h_eff, h_pred, cfg: ReceiverConfig):
    # h_eff: slope of the observation map at x_pred; h_pred: predicted measurement
    sigma_e2 = effective_noise_variance(cfg)
    sqrt_rho = math.sqrt(cfg.rho)
    m = state.m_pred
    signal = cfg.rho * np.abs(h_eff) ** 2 * m
    denom = sigma_e2 + signal
    if np.any(denom == 0):
        raise DegenerateUpdateError(
            "sigma_e^2 and rho*|h|^2*M(n|n-1) are both zero; the update is undefined"
        )
    gain = m * sqrt_rho * np.conj(h_eff) / denom
    x_upd = state.x_pred + gain * (y_est - sqrt_rho * h_pred)
    # m * (ratio <= 1) keeps m_upd <= m_pred under rounding
    m_upd = m * (sigma_e2 / denom)
    return gain, x_upd, m_upd


def update(state: FilterState, y_est, h, cfg: ReceiverConfig) -> FilterState:
    """Kalman correction with the estimation-branch sample ``y_est``.

    The MMSE is propagated in the fraction form ``sigma_e^2 M / (sigma_e^2 +
    rho |h|^2 M)``; :func:`gain_form_mmse` gives the algebraically equal
    ``(1 - K sqrt(rho) h) M`` for cross-checking.
    """
    gain, x_upd, m_upd = _correct(state, y_est, h, h * state.x_pred, cfg)
    return replace(state, gain=gain, x_upd=x_upd, m_upd=m_upd)


def gain_form_mmse(state: FilterState, h, cfg: ReceiverConfig):
    return np.real((1.0 - state.gain * math.sqrt(cfg.rho) * h) * state.m_pred)


def steady_state_mmse(model: GaussMarkovModel, cfg: ReceiverConfig, gain2: float) -> SteadyState:
    """Positive root of ``q1 M^2 + q2 M + q3 = 0``, the fixed point of the MMSE recursion."""
    if gain2 < 0:
        raise ValueError(f"gain2 must be >= 0, got {gain2}")
    a2 = model.a**2
    sigma_e2 = effective_noise_variance(cfg)
    snr = cfg.rho * gain2
    q1 = snr * a2
    q2 = snr * model.sigma_u2 + sigma_e2 * (1.0 - a2)
    q3 = -model.sigma_u2 * sigma_e2
    if cfg.rho == 0:
        m_inf = asymptotic_variance(model)
    elif q1 == 0:
        if q2 == 0:
            # a=0, sigma_u2=0 and sigma_e2=0: the state is identically 0
            m_inf = 0.0
        else:
            m_inf = -q3 / q2
    else:
        # rationalized root; avoids cancellation when q1*|q3| << q2^2
        m_inf = -2.0 * q3 / (q2 + math.sqrt(q2 * q2 - 4.0 * q1 * q3))
    return SteadyState(m_inf=m_inf, q1=q1, q2=q2, q3=q3)


def mmse_sequence(model: GaussMarkovModel, cfg: ReceiverConfig, gain2: float, n_max: int):
    """Deterministic ``(M(n|n-1), M(n|n))`` for ``n = 0..n_max`` over a static channel."""
    sigma_e2 = effective_noise_variance(cfg)
    snr = cfg.rho * gain2
    m_pred = np.empty(n_max + 1)
    m_upd = np.empty(n_max + 1)
    m = model.sigma02
    for n in range(n_max + 1):
        mp = model.a**2 * m + model.sigma_u2
        denom = sigma_e2 + snr * mp
        if denom == 0:
            raise DegenerateUpdateError("degenerate MMSE update")
        m = mp * (sigma_e2 / denom)
        m_pred[n] = mp
        m_upd[n] = m
    return m_pred, m_upd


def has_converged(m_prev: float, m_curr: float, rtol: float = CONVERGENCE_RTOL) -> bool:
    return abs(m_curr - m_prev) < rtol * m_curr


@dataclass(frozen=True)
class FilterRun:
    """Result of filtering one or more realizations for ``n = 0..n_max``.

    Array fields have shape ``(trials, n_max + 1)``. ``lin_gain`` is only
    set for the extended filter.
    """

    states: np.ndarray
    x_pred: np.ndarray
    estimates: np.ndarray
    m_pred: np.ndarray
    m_upd: np.ndarray
    kalman_gain: np.ndarray
    channel: np.ndarray
    lin_gain: np.ndarray | None = None

    @property
    def sq_errors(self) -> np.ndarray:
        return np.abs(self.states - self.estimates) ** 2


def simulate(model, cfg, channel: ChannelSpec, n_max: int, rng, trials: int = 1, hpa=None) -> FilterRun:
    """Sample ``trials`` realizations of state, channel and noise, and filter them.

    Draw order per step is fixed (excitation, channel, observation noise) so a
    given generator state always yields the same run. With ``hpa`` set, the
    transmitter applies the amplifier nonlinearity and the receiver runs the
    extended filter instead of the linear one.
    """
    from . import hpa as _hpa

    rng = as_generator(rng)
    shape = (trials,)
    x = complex_normal(rng, model.sigma02, shape, mean=model.mu0)
    st = init_filter(model)
    st = replace(st, x_upd=np.full(shape, st.x_upd), m_upd=np.full(shape, st.m_upd))
    cplx = ("states", "x_pred", "estimates", "kalman_gain", "channel")
    if hpa is not None:
        cplx += ("lin_gain",)
    out = {k: np.empty((trials, n_max + 1), dtype=np.complex128) for k in cplx}
    out["m_pred"] = np.empty((trials, n_max + 1))
    out["m_upd"] = np.empty((trials, n_max + 1))
    for n in range(n_max + 1):
        x = advance_state(model, x, complex_normal(rng, model.sigma_u2, shape))
        h = channel_gains(channel, rng, shape)
        tx = x if hpa is None else _hpa.hpa_output(x, hpa)
        obs = observe(tx, h, cfg, rng)
        st = predict(st, model)
        if hpa is None:
            st = update(st, obs.y_est, h, cfg)
        else:
            st = _hpa.ekf_step(st, obs.y_est, h, cfg, model, hpa)
            out["lin_gain"][:, n] = st.lin_gain
        out["states"][:, n] = x
        out["x_pred"][:, n] = st.x_pred
        out["estimates"][:, n] = st.x_upd
        out["kalman_gain"][:, n] = st.gain
        out["channel"][:, n] = h
        out["m_pred"][:, n] = st.m_pred
        out["m_upd"][:, n] = st.m_upd
    return FilterRun(**out)


def run_filter(model, cfg, channel: ChannelSpec, n_max: int, seed):
    """Filter a single realization.

    Returns the per-step :class:`FilterState` list and the realized squared
    errors ``|x(n) - x_hat(n|n)|^2``.
    """
    res = simulate(model, cfg, channel, n_max, seed, trials=1)
    states = [
        FilterState(
            x_pred=complex(res.x_pred[0, n]),
            m_pred=float(res.m_pred[0, n]),
            gain=complex(res.kalman_gain[0, n]),
            x_upd=complex(res.estimates[0, n]),
            m_upd=float(res.m_upd[0, n]),
            n=n,
        )
        for n in range(n_max + 1)
    ]
    return states, res.sq_errors[0]


def static_channel(gain2: float = 1.0) -> StaticChannel:
    return StaticChannel(h=math.sqrt(gain2))
