"""The reference experiments. Each takes an :class:`ExperimentSpec` and returns a table."""

from __future__ import annotations

from dataclasses import replace

from ..bounds import empirical_cdf, grid, theorem1_bounds
from ..channel import RayleighChannel, StaticChannel
from ..energy import harvested_fading, harvested_static
from ..kalman import mmse_sequence, simulate, steady_state_mmse
from ..model import INF
from .montecarlo import exact_mean, mean_and_stderr, run_blocks
from .spec import ExperimentSpec, Kind, SpecError
from .table import ResultTable

MIN_CDF_TRIALS = 10_000
MIN_MSE_TRIALS = 100


def _require_static(spec: ExperimentSpec) -> StaticChannel:
    if not isinstance(spec.channel, StaticChannel):
        raise SpecError(f"{spec.kind.value} needs a static channel")
    return spec.channel


def _require_rayleigh(spec: ExperimentSpec) -> RayleighChannel:
    if not isinstance(spec.channel, RayleighChannel):
        raise SpecError(f"{spec.kind.value} needs a Rayleigh channel")
    return spec.channel


def run_mmse_vs_time(spec: ExperimentSpec, threads: int = 1) -> ResultTable:
    channel = _require_static(spec)
    table = ResultTable(("rho", "sigma_u2", "n", "m_pred", "m_upd", "m_inf"), provenance=spec)
    for sigma_u2 in spec.sigma_u2_grid or (spec.model.sigma_u2,):
        model = replace(spec.model, sigma_u2=sigma_u2)
        for rho in spec.rho_grid:
            cfg = replace(spec.cfg, rho=rho)
            m_pred, m_upd = mmse_sequence(model, cfg, channel.gain2, spec.n_max)
            m_inf = steady_state_mmse(model, cfg, channel.gain2).m_inf
            for n in range(spec.n_max + 1):
                table.append(rho, sigma_u2, n, float(m_pred[n]), float(m_upd[n]), m_inf)
    return table


def run_tradeoff_static(spec: ExperimentSpec, threads: int = 1) -> ResultTable:
    channel = _require_static(spec)
    n_grid = spec.n_grid or (spec.n_max, INF)
    finite = [n for n in n_grid if n is not INF]
    horizon = max(finite, default=0)
    table = ResultTable(("rho", "n", "m_upd_at_n", "energy_at_n"), provenance=spec)
    for rho in spec.rho_grid:
        cfg = replace(spec.cfg, rho=rho)
        _, m_upd = mmse_sequence(spec.model, cfg, channel.gain2, horizon)
        for n in n_grid:
            energy = harvested_static(n, spec.model, channel.gain2, cfg).e_n
            if n is INF:
                table.append(rho, float("inf"), steady_state_mmse(spec.model, cfg, channel.gain2).m_inf, energy)
            else:
                table.append(rho, n, float(m_upd[n]), energy)
    return table


def _final_mmse_work(spec: ExperimentSpec, cfg):
    def work(rng, size):
        res = simulate(spec.model, cfg, spec.channel, spec.n_max, rng, trials=size)
        return {"m": res.m_upd[:, -1]}

    return work


def run_fading_cdf(spec: ExperimentSpec, threads: int = 1) -> ResultTable:
    channel = _require_rayleigh(spec)
    if spec.trials < MIN_CDF_TRIALS:
        raise SpecError(f"fading-cdf needs trials >= {MIN_CDF_TRIALS}, got {spec.trials}")
    lower, upper = theorem1_bounds(spec.model, spec.cfg, channel.lam)
    samples = run_blocks(_final_mmse_work(spec, spec.cfg), spec.trials, spec.seed, threads=threads)["m"]
    ecdf = empirical_cdf(samples)
    xs = grid(lower, upper)
    table = ResultTable(("x", "F_empirical", "F_lower", "F_upper"), provenance=spec)
    for x, fe, fl, fu in zip(xs, ecdf(xs), lower(xs), upper(xs)):
        table.append(float(x), float(fe), float(fl), float(fu))
    return table


def run_fading_tradeoff(spec: ExperimentSpec, threads: int = 1) -> ResultTable:
    channel = _require_rayleigh(spec)
    if any(r <= 0 for r in spec.rho_grid):
        raise SpecError("fading-tradeoff needs rho > 0 (the mean bounds are undefined at rho = 0)")
    table = ResultTable(
        ("rho", "mean_mmse_mc", "mean_mmse_se", "theta_lower", "theta_upper", "energy"), provenance=spec
    )
    for i, rho in enumerate(spec.rho_grid):
        cfg = replace(spec.cfg, rho=rho)
        samples = run_blocks(_final_mmse_work(spec, cfg), spec.trials, spec.seed, key=(i,), threads=threads)["m"]
        mean, se = mean_and_stderr(samples)
        lower, upper = theorem1_bounds(spec.model, cfg, channel.lam)
        energy = harvested_fading(INF, spec.model, channel.lam, cfg).e_n
        table.append(rho, float(mean), float(se), lower.mean(), upper.mean(), energy)
    return table


def _filter_work(spec: ExperimentSpec, hpa):
    def work(rng, size):
        res = simulate(spec.model, spec.cfg, spec.channel, spec.n_max, rng, trials=size, hpa=hpa)
        return {"m_upd": res.m_upd, "sq_err": res.sq_errors}

    return work


def run_hpa_mmse(spec: ExperimentSpec, threads: int = 1) -> ResultTable:
    """EKF MMSE versus time; the MMSE depends on the realization and is averaged over trials.

    When ``spec.dump_realizations`` is positive the per-realization MMSE
    curves of the first trials are attached as ``table.realizations``.
    """
    channel = _require_static(spec)
    if spec.hpa is None:
        raise SpecError("hpa-mmse needs amplifier parameters")
    out = run_blocks(_filter_work(spec, spec.hpa), spec.trials, spec.seed, threads=threads)
    m_ekf = exact_mean(out["m_upd"])
    mse, se = mean_and_stderr(out["sq_err"])
    _, m_lin = mmse_sequence(spec.model, spec.cfg, channel.gain2, spec.n_max)
    table = ResultTable(("n", "m_upd_ekf", "m_upd_linear_reference", "mse_mc_ekf", "mse_mc_se"), provenance=spec)
    for n in range(spec.n_max + 1):
        table.append(n, float(m_ekf[n]), float(m_lin[n]), float(mse[n]), float(se[n]))
    if spec.dump_realizations:
        k = min(spec.dump_realizations, spec.trials)
        dump = ResultTable(("trial", "n", "m_upd_ekf"), provenance=spec)
        for t in range(k):
            for n in range(spec.n_max + 1):
                dump.append(t, n, float(out["m_upd"][t, n]))
        table.realizations = dump
    return table


def monte_carlo_mse(spec: ExperimentSpec, threads: int = 1) -> ResultTable:
    """Empirical ``|x(n) - x_hat(n|n)|^2`` against the filter's own MMSE.

    For fading channels (and the EKF) the MMSE is realization dependent and
    the ``m_upd`` column is its trial average.
    """
    if spec.trials < MIN_MSE_TRIALS:
        raise SpecError(f"mc-mse needs trials >= {MIN_MSE_TRIALS}, got {spec.trials}")
    out = run_blocks(_filter_work(spec, spec.hpa), spec.trials, spec.seed, threads=threads)
    mse, se = mean_and_stderr(out["sq_err"])
    m_upd = exact_mean(out["m_upd"])
    table = ResultTable(("n", "mse_mc", "mse_se", "m_upd"), provenance=spec)
    for n in range(spec.n_max + 1):
        table.append(n, float(mse[n]), float(se[n]), float(m_upd[n]))
    return table


RUNNERS = {
    Kind.MMSE_VS_TIME: run_mmse_vs_time,
    Kind.TRADEOFF_STATIC: run_tradeoff_static,
    Kind.FADING_CDF: run_fading_cdf,
    Kind.FADING_TRADEOFF: run_fading_tradeoff,
    Kind.HPA_MMSE: run_hpa_mmse,
    Kind.MONTE_CARLO_MSE: monte_carlo_mse,
}


def run(spec: ExperimentSpec, threads: int = 1) -> ResultTable:
    return RUNNERS[spec.kind](spec, threads=threads)


__all__ = ["RUNNERS", "run"] + [f.__name__ for f in RUNNERS.values()]
