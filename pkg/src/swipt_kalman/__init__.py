"""Kalman estimation of a scalar Gauss-Markov signal with power-splitting energy harvesting.

The receiver splits the received power between a (extended) Kalman filter
and a linear energy harvester. Modules:

- :mod:`~swipt_kalman.model`: the complex Gauss-Markov process and its moments
- :mod:`~swipt_kalman.channel`: static and Rayleigh block-fading channels, the splitter
- :mod:`~swipt_kalman.kalman`: the linear filter and its steady-state MMSE
- :mod:`~swipt_kalman.hpa`: the SSPA nonlinearity and the extended filter
- :mod:`~swipt_kalman.energy`: average harvested energy
- :mod:`~swipt_kalman.bounds`: MMSE CDF bounds under fading and their means
- :mod:`~swipt_kalman.harness`: reference experiments, CSV output and the CLI
"""

from .bounds import CdfBound, EmpiricalCdf, cdf_bound_eval, empirical_cdf, mean_bound, theorem1_bounds
from .channel import (
    ObservationSample,
    RayleighChannel,
    ReceiverConfig,
    StaticChannel,
    effective_noise_variance,
    observe,
    sample_block_gain,
)
from .energy import EnergyReport, harvested_fading, harvested_hpa, harvested_static, hpa_second_moment
from .estimators import PowerSplittingKalmanFilter, SSPAExtendedKalmanFilter
from .hpa import EkfState, HpaParams, amam, ekf_step, hpa_output, linearization_gain
from .kalman import (
    FilterState,
    SteadyState,
    init_filter,
    predict,
    run_filter,
    simulate,
    steady_state_mmse,
    update,
)
from .model import (
    INF,
    GaussMarkovModel,
    Trajectory,
    advance_state,
    asymptotic_variance,
    sample_trajectory,
    second_moment,
)
from .quadrature import IntegrationError, integrate_semi_infinite
from .special import bessel_i0, exp_integral_e1

__version__ = "0.1.0"

__all__ = [
    "INF",
    "CdfBound",
    "EkfState",
    "EmpiricalCdf",
    "EnergyReport",
    "FilterState",
    "GaussMarkovModel",
    "HpaParams",
    "IntegrationError",
    "ObservationSample",
    "PowerSplittingKalmanFilter",
    "RayleighChannel",
    "ReceiverConfig",
    "SSPAExtendedKalmanFilter",
    "StaticChannel",
    "SteadyState",
    "Trajectory",
    "advance_state",
    "amam",
    "asymptotic_variance",
    "bessel_i0",
    "cdf_bound_eval",
    "effective_noise_variance",
    "ekf_step",
    "empirical_cdf",
    "exp_integral_e1",
    "harvested_fading",
    "harvested_hpa",
    "harvested_static",
    "hpa_output",
    "hpa_second_moment",
    "init_filter",
    "integrate_semi_infinite",
    "linearization_gain",
    "mean_bound",
    "observe",
    "predict",
    "run_filter",
    "sample_block_gain",
    "sample_trajectory",
    "second_moment",
    "simulate",
    "steady_state_mmse",
    "theorem1_bounds",
    "update",
]
