"""Solid-state power amplifier (SSPA) and the extended Kalman filter it requires.

The amplifier compresses the envelope and leaves the phase untouched:

    f_A(r) = r / ((r / A_sat)^(2 beta) + 1)^(1 / (2 beta)),    f_P(r) = 0.

Powers of ``r / A_sat`` are evaluated in the log domain so that large
``beta`` or large inputs saturate cleanly instead of overflowing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_positive
from .channel import ReceiverConfig
from .kalman import FilterState, _correct
from .model import GaussMarkovModel

# below this fraction of A_sat the linearization gain is taken as the small-signal slope 1
ORIGIN_RTOL = 1e-9
# floor on |Re z_hat| (fraction of A_sat) in the sqrt(1 + y0^2/x0^2) factor
AXIS_RTOL = 1e-12


@dataclass(frozen=True)
class HpaParams:
    a_sat: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a_sat", check_positive(self.a_sat, "a_sat"))
        object.__setattr__(self, "beta", check_positive(self.beta, "beta"))


@dataclass(frozen=True)
class EkfState(FilterState):
    lin_gain: complex = 1 + 0j


def _log_ratio(r, p: HpaParams):
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(r, dtype=float) / p.a_sat)


def _compression(r, p: HpaParams):
    """``log(1 + (r/A_sat)^(2 beta))`` without overflow."""
    return np.logaddexp(0.0, 2.0 * p.beta * _log_ratio(r, p))


def amam(r, p: HpaParams):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("amplitude must be >= 0")
    out = r * np.exp(-_compression(r, p) / (2.0 * p.beta))
    return out if out.ndim else float(out)


def hpa_output(z, p: HpaParams):
    """Amplifier output for complex input: compressed envelope, same phase."""
    z = np.asarray(z, dtype=np.complex128)
    out = z * np.exp(-_compression(np.abs(z), p) / (2.0 * p.beta))
    return out if out.ndim else complex(out)


def linearization_gain(z_hat, p: HpaParams):
    """Complex slope ``dU/dx + j dV/dx`` of the amplifier at ``z_hat``.

    ``U`` and ``V`` are the real and imaginary parts of the output seen as
    functions of ``x0 = Re z_hat`` and ``y0 = Im z_hat``. The expression keeps
    the structure of the closed form (magnitude term minus a ``j y0`` term over
    ``sqrt(1 + y0^2/x0^2)``); that square root carries the sign of ``x0`` so the
    result stays the partial derivative of the phase-preserving map in every
    quadrant. Inputs within ``1e-9 A_sat`` of the origin return the
    small-signal slope 1.
    """
    z_hat = np.asarray(z_hat, dtype=np.complex128)
    x0 = z_hat.real
    y0 = z_hat.imag
    r = np.abs(z_hat)
    near_origin = r < ORIGIN_RTOL * p.a_sat
    r = np.where(near_origin, p.a_sat, r)
    beta = p.beta
    expo = (1.0 + 2.0 * beta) / (2.0 * beta)
    log_ratio = _log_ratio(r, p)
    log_1pt = np.logaddexp(0.0, 2.0 * beta * log_ratio)
    # r (1+t)^-expo (x0^2 + y0^2 (1+t)) / r^3, with the (1+t) factors merged
    real = (x0 * x0 * np.exp(-expo * log_1pt) + y0 * y0 * np.exp((1.0 - expo) * log_1pt)) / (r * r)
    # y0 (r/A)^(2 beta - 1) (1+t)^-expo / (A sqrt(1 + y0^2/x0^2))
    floor = AXIS_RTOL * p.a_sat
    x0_abs = np.maximum(np.abs(x0), floor)
    sign = np.where(x0 < 0, -1.0, 1.0)
    mag = np.exp((2.0 * beta - 1.0) * log_ratio - expo * log_1pt) / p.a_sat
    imag = y0 * mag / (sign * np.sqrt(1.0 + (y0 / x0_abs) ** 2))
    f = np.where(near_origin, 1.0 + 0j, real - 1j * imag)
    return f if f.ndim else complex(f)


def ekf_step(
    state: FilterState,
    y_est,
    h,
    cfg: ReceiverConfig,
    model: GaussMarkovModel,
    p: HpaParams,
) -> EkfState:
    """Extended Kalman correction of a predicted state.

    The prediction step is the linear one (:func:`swipt_kalman.kalman.predict`);
    ``model`` is accepted for signature symmetry with the linear filter.
    """
    f = linearization_gain(state.x_pred, p)
    h_eff = h * f
    predicted = h * hpa_output(state.x_pred, p)
    gain, x_upd, m_upd = _correct(state, y_est, h_eff, predicted, cfg)
    fields = {k: getattr(state, k) for k in ("x_pred", "m_pred", "n")}
    return EkfState(gain=gain, x_upd=x_upd, m_upd=m_upd, lin_gain=f, **fields)


def ekf_mmse_update(m_pred, gain2: float, lin_gain, cfg: ReceiverConfig):
    """MMSE after an extended update, ``sigma_e^2 M / (sigma_e^2 + rho |h|^2 |f|^2 M)``."""
    sigma_e2 = cfg.rho * cfg.sigma_v2 + cfg.sigma_q2
    return m_pred * (sigma_e2 / (sigma_e2 + cfg.rho * gain2 * np.abs(lin_gain) ** 2 * m_pred))


def hard_limiter(r, a_sat: float):
    return np.minimum(r, a_sat)


__all__ = [
    "HpaParams",
    "EkfState",
    "amam",
    "hpa_output",
    "linearization_gain",
    "ekf_step",
    "ekf_mmse_update",
    "hard_limiter",
]
