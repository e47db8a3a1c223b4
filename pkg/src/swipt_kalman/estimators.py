"""scikit-learn style wrappers around the filters.

The filters have no trainable parameters: ``fit`` only validates the
hyper-parameters and precomputes the model objects, so the estimators can
sit in a :class:`~sklearn.pipeline.Pipeline` or be cloned and grid-searched
like any other transformer. ``transform`` maps estimation-branch samples
``y'(n)`` of shape ``(n_sequences, n_steps)`` to state estimates of the same
shape.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_complex, check_observations
from .channel import ReceiverConfig
from .hpa import HpaParams, ekf_step
from .kalman import init_filter, predict, steady_state_mmse, update
from .model import GaussMarkovModel


class PowerSplittingKalmanFilter(TransformerMixin, BaseEstimator):
    """Linear Kalman filter on the estimation branch of a power-splitting receiver.

    Parameters
    ----------
    a, sigma_u2, mu0, sigma02 : float
        Gauss-Markov state parameters.
    rho : float
        Fraction of received power routed to the estimator.
    sigma_v2, sigma_q2 : float
        Channel-noise and circuit-noise variances.
    h : complex
        Static channel gain, used when ``transform`` gets no per-step gains.

    Attributes
    ----------
    model_ : GaussMarkovModel
    config_ : ReceiverConfig
    steady_state_ : SteadyState
        Asymptotic MMSE for the static gain ``h``.
    """

    def __init__(self, a=0.8, sigma_u2=0.001, mu0=0.0, sigma02=0.1, rho=0.9, sigma_v2=1.0, sigma_q2=0.5, h=1.0):
        self.a = a
        self.sigma_u2 = sigma_u2
        self.mu0 = mu0
        self.sigma02 = sigma02
        self.rho = rho
        self.sigma_v2 = sigma_v2
        self.sigma_q2 = sigma_q2
        self.h = h

    def fit(self, Y=None, y=None):
        self.model_ = GaussMarkovModel(a=self.a, sigma_u2=self.sigma_u2, mu0=self.mu0, sigma02=self.sigma02)
        self.config_ = ReceiverConfig(rho=self.rho, sigma_v2=self.sigma_v2, sigma_q2=self.sigma_q2)
        self.h_ = check_complex(self.h, "h")
        self.steady_state_ = steady_state_mmse(self.model_, self.config_, abs(self.h_) ** 2)
        if Y is not None:
            self.n_features_in_ = check_observations(Y).shape[1]
        return self

    def _gains(self, Y, gains):
        if gains is None:
            return np.full(Y.shape, self.h_, dtype=np.complex128)
        gains = np.broadcast_to(np.asarray(gains, dtype=np.complex128), Y.shape)
        if not np.all(np.isfinite(gains)):
            raise ValueError("channel gains contain NaN or infinity")
        return gains

    def _step(self, state, y_est, h):
        return update(predict(state, self.model_), y_est, h, self.config_)

    def filter(self, Y, gains=None):
        """Run the filter; returns ``(estimates, mmse)``, both shaped like ``Y``.

        ``gains`` holds the per-step channel coefficients (block fading);
        it broadcasts against ``Y`` and defaults to the static ``h``.
        """
        check_is_fitted(self, "model_")
        Y = check_observations(Y)
        H = self._gains(Y, gains)
        state = init_filter(self.model_)
        rows = Y.shape[0]
        state = replace(state, x_upd=np.full(rows, state.x_upd), m_upd=np.full(rows, state.m_upd))
        estimates = np.empty_like(Y)
        mmse = np.empty(Y.shape)
        for n in range(Y.shape[1]):
            state = self._step(state, Y[:, n], H[:, n])
            estimates[:, n] = state.x_upd
            mmse[:, n] = state.m_upd
        return estimates, mmse

    def transform(self, Y, gains=None):
        return self.filter(Y, gains)[0]

    def mmse(self, Y, gains=None):
        return self.filter(Y, gains)[1]


class SSPAExtendedKalmanFilter(PowerSplittingKalmanFilter):
    """Extended Kalman filter for a transmitter with an SSPA nonlinearity.

    Adds the amplifier saturation ``a_sat`` and smoothness ``beta`` to the
    parameters of :class:`PowerSplittingKalmanFilter`. The reported MMSE is
    the filter's own linearized estimate and depends on the observations.
    """

    def __init__(
        self, a=0.8, sigma_u2=0.01, mu0=0.0, sigma02=0.01, rho=0.9, sigma_v2=1.0, sigma_q2=0.5, h=1.0,
        a_sat=1.0, beta=1.0,
    ):
        super().__init__(a=a, sigma_u2=sigma_u2, mu0=mu0, sigma02=sigma02, rho=rho,
                         sigma_v2=sigma_v2, sigma_q2=sigma_q2, h=h)
        self.a_sat = a_sat
        self.beta = beta

    def fit(self, Y=None, y=None):
        super().fit(Y, y)
        self.hpa_ = HpaParams(a_sat=self.a_sat, beta=self.beta)
        return self

    def _step(self, state, y_est, h):
        return ekf_step(predict(state, self.model_), y_est, h, self.config_, self.model_, self.hpa_)
