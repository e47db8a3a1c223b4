"""Average harvested energy on the power-splitting branch.

All formulas use the linear harvester model and count only the signal
component ``sqrt(1 - rho) h x(n)``; noise is not harvested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_horizon, check_nonnegative, check_positive
from .channel import ReceiverConfig
from .hpa import HpaParams, amam
from .model import INF, GaussMarkovModel, asymptotic_variance, second_moment, state_variance
from .quadrature import DEFAULT_TOL, integrate_semi_infinite
from .special import bessel_i0e, scaled_exp_integral_e1


@dataclass(frozen=True)
class EnergyReport:
    """Harvested energy at one time index.

    Attributes:
        e_n: Average harvested energy at ``n``.
        e_inf: The same quantity in the asymptotic regime.
        x_moment: Second moment of the transmitted signal used for ``e_n``.
        nu2: Spread of ``x(n)`` about its mean (the stationary variance for ``n=INF``).
    """

    e_n: float
    e_inf: float
    x_moment: float
    nu2: float


def _spread(model: GaussMarkovModel, n) -> float:
    return asymptotic_variance(model) if n is INF else state_variance(model, n)


def _report(scale: float, moment_n: float, moment_inf: float, nu2: float) -> EnergyReport:
    return EnergyReport(e_n=scale * moment_n, e_inf=scale * moment_inf, x_moment=moment_n, nu2=nu2)


def harvested_static(n, model: GaussMarkovModel, gain2: float, cfg: ReceiverConfig) -> EnergyReport:
    n = check_horizon(n)
    gain2 = check_nonnegative(gain2, "gain2")
    scale = cfg.zeta * (1.0 - cfg.rho) * gain2
    return _report(scale, second_moment(model, n), second_moment(model, INF), _spread(model, n))


def harvested_fading(n, model: GaussMarkovModel, lam: float, cfg: ReceiverConfig) -> EnergyReport:
    """Rayleigh block fading: the channel contributes its mean power ``1/lam``."""
    n = check_horizon(n)
    lam = check_positive(lam, "lam")
    scale = cfg.zeta * (1.0 - cfg.rho) / lam
    return _report(scale, second_moment(model, n), second_moment(model, INF), _spread(model, n))


def rayleigh_hpa_moment(sigma2: float, p: HpaParams, tol: float = DEFAULT_TOL) -> float:
    """``E{f_A(|x|)^2}`` for ``x ~ CN(0, sigma2)`` by adaptive quadrature."""
    sigma2 = check_nonnegative(sigma2, "sigma2")
    if sigma2 == 0:
        return 0.0

    def integrand(x):
        return amam(x, p) ** 2 * (2.0 * x / sigma2) * np.exp(-x * x / sigma2)

    value, _ = integrate_semi_infinite(integrand, tol=tol, scale=math.sqrt(sigma2))
    return value


def rician_hpa_moment(loc: float, nu2: float, p: HpaParams, tol: float = DEFAULT_TOL) -> float:
    """``E{f_A(|x|)^2}`` for ``x ~ CN(m, nu2)`` with ``|m| = loc``.

    The Rician envelope density is evaluated with the scaled Bessel function,
    ``exp(-(x - loc)^2 / nu2) I0e(2 x loc / nu2)``, so it never overflows.
    """
    loc = abs(float(loc))
    nu2 = check_nonnegative(nu2, "nu2")
    if nu2 == 0:
        return amam(loc, p) ** 2

    def integrand(x):
        dens = (2.0 * x / nu2) * np.exp(-((x - loc) ** 2) / nu2) * bessel_i0e(2.0 * x * loc / nu2)
        return amam(x, p) ** 2 * dens

    value, _ = integrate_semi_infinite(integrand, tol=tol, scale=math.sqrt(nu2) + loc)
    return value


def rayleigh_hpa_moment_beta1(sigma2: float, a_sat: float) -> float:
    """Closed form of :func:`rayleigh_hpa_moment` for ``beta = 1``.

    With ``u = x^2`` the integral reduces to
    ``A^2 (1 - (A^2/sigma2) exp(A^2/sigma2) E1(A^2/sigma2))``.
    """
    sigma2 = check_nonnegative(sigma2, "sigma2")
    a_sat = check_positive(a_sat, "a_sat")
    if sigma2 == 0:
        return 0.0
    s = a_sat**2 / sigma2
    return a_sat**2 * (1.0 - s * scaled_exp_integral_e1(s))


def hpa_second_moment(n, model: GaussMarkovModel, p: HpaParams, tol: float = DEFAULT_TOL) -> float:
    """``E{|F_HPA(x(n))|^2}``; Rician-weighted for finite ``n``, Rayleigh for ``n=INF``."""
    n = check_horizon(n)
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if n is INF:
        return rayleigh_hpa_moment(asymptotic_variance(model), p, tol)
    loc = model.a ** (n + 1) * model.mu0
    return rician_hpa_moment(loc, state_variance(model, n), p, tol)


def harvested_hpa(
    n, model: GaussMarkovModel, gain2: float, cfg: ReceiverConfig, p: HpaParams, tol: float = DEFAULT_TOL
) -> EnergyReport:
    n = check_horizon(n)
    gain2 = check_nonnegative(gain2, "gain2")
    scale = cfg.zeta * (1.0 - cfg.rho) * gain2
    if scale == 0:
        return EnergyReport(e_n=0.0, e_inf=0.0, x_moment=hpa_second_moment(n, model, p, tol), nu2=_spread(model, n))
    moment_n = hpa_second_moment(n, model, p, tol)
    moment_inf = moment_n if n is INF else hpa_second_moment(INF, model, p, tol)
    return _report(scale, moment_n, moment_inf, _spread(model, n))
