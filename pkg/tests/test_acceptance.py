"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v -s`` or
``python tests/test_acceptance.py``; the summary lines are also repeated at
the end of every pytest session that collects this module.
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import replace

import numpy as np
import pytest

from swipt_kalman import (
    INF,
    GaussMarkovModel,
    HpaParams,
    ReceiverConfig,
    exp_integral_e1,
    harvested_static,
    hpa_output,
    hpa_second_moment,
    linearization_gain,
    second_moment,
    steady_state_mmse,
)
from swipt_kalman.bounds import ks_band, theorem1_bounds
from swipt_kalman.cli import main as cli_main
from swipt_kalman.energy import rayleigh_hpa_moment, rayleigh_hpa_moment_beta1
from swipt_kalman.harness import Kind, resolve
from swipt_kalman.harness.experiments import _filter_work, monte_carlo_mse, run_fading_cdf, run_fading_tradeoff
from swipt_kalman.harness.montecarlo import exact_mean, mean_and_stderr, run_blocks
from swipt_kalman.kalman import mmse_sequence
from swipt_kalman.model import sample_states

THREADS = min(8, os.cpu_count() or 1)
RESULTS: dict[int, tuple[bool, str]] = {}


def report(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (bool(ok), detail)
    print(f"CRITERION {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def base_setting():
    return (
        GaussMarkovModel(a=0.8, sigma_u2=0.001, mu0=0.0, sigma02=0.1),
        ReceiverConfig(rho=0.9, sigma_v2=1.0, sigma_q2=0.5),
    )


def test_c01_steady_state_consistency():
    model, cfg = base_setting()
    closed = steady_state_mmse(model, cfg, 1.0).m_inf
    _, m_upd = mmse_sequence(model, cfg, 1.0, 200)
    rec_err = abs(m_upd[200] - closed) / closed
    m = model.sigma02
    for _ in range(100_000):
        mp = model.a**2 * m + model.sigma_u2
        new = cfg.sigma_e2 * mp / (cfg.sigma_e2 + cfg.rho * mp)
        if abs(new - m) <= 1e-16 * new:
            m = new
            break
        m = new
    fp_err = abs(m - closed) / closed
    report(1, rec_err < 1e-9 and fp_err < 1e-12,
           f"M(inf)={closed!r}; recursion rel err at n=200 {rec_err:.2e} (<1e-9); fixed point rel err {fp_err:.2e} (<1e-12)")


def test_c02_rho_zero_identity():
    model, _ = base_setting()
    cfg = ReceiverConfig(rho=0.0, zeta=1.0)
    m_inf = steady_state_mmse(model, cfg, 1.0).m_inf
    expected = model.sigma_u2 / (1 - model.a**2)
    err = abs(m_inf - expected) / expected
    energy = harvested_static(INF, model, 1.0, cfg).e_n
    e_err = abs(energy - cfg.zeta * 1.0 * m_inf) / m_inf
    report(2, err <= 1e-15 and e_err <= 1e-15,
           f"M(inf)|rho=0 rel err {err:.1e}; E(inf) vs zeta|h|^2 M(inf) rel err {e_err:.1e} (<=1e-15)")


def test_c03_monte_carlo_mmse():
    spec = resolve(Kind.MONTE_CARLO_MSE, None, {"trials": 100_000, "n_max": 30, "seed": 1})
    t = monte_carlo_mse(spec, threads=THREADS)
    mse = np.array(t.column("mse_mc"))
    m_upd = np.array(t.column("m_upd"))
    worst = float(np.max(np.abs(mse / m_upd - 1)))
    report(3, worst < 0.02, f"max |MSE/M(n|n) - 1| over n<=30 at 1e5 trials = {worst:.4f} (<0.02)")


def test_c04_cdf_sandwich():
    band = ks_band(100_000, 0.99)
    lines, ok = [], True
    sup_gaps, l1_gaps = [], []
    for i, a in enumerate((0.9, 0.6, 0.4, 0.1)):
        spec = resolve(Kind.FADING_CDF, None, {"a": a, "trials": 100_000, "seed": 40 + i})
        t = run_fading_cdf(spec, threads=THREADS)
        fe = np.array(t.column("F_empirical"))
        fl = np.array(t.column("F_lower"))
        fu = np.array(t.column("F_upper"))
        hi = np.maximum(fl, fu) + band
        lo = np.minimum(fl, fu) - band
        excess = float(max(np.max(fe - hi), np.max(lo - fe), 0.0))
        ok &= excess == 0.0
        lower, upper = theorem1_bounds(spec.model, spec.cfg, spec.channel.lam)
        sup_gaps.append(float(np.max(np.abs(fu - fl))))
        l1_gaps.append(upper.mean() - lower.mean())
        lines.append(f"a={a}: worst excursion beyond band {excess:.4f}")
    sup_ok = all(g1 >= g2 for g1, g2 in zip(sup_gaps, sup_gaps[1:]))
    l1_ok = all(g1 > g2 for g1, g2 in zip(l1_gaps, l1_gaps[1:]))
    ok &= sup_ok and l1_ok
    report(4, ok, f"KS band {band:.5f}; " + "; ".join(lines)
           + f"; sup gaps {[float(f'{g:.3g}') for g in sup_gaps]} nonincreasing={sup_ok}"
           + f"; L1 gaps {[float(f'{g:.3g}') for g in l1_gaps]} decreasing={l1_ok}")


def _e1_series(x: float, terms: int = 60) -> float:
    s = math.fsum((-1) ** (k + 1) * x**k / (k * math.factorial(k)) for k in range(1, terms))
    return -0.57721566490153286061 - math.log(x) + s


def test_c05_mean_bound_sandwich():
    e1_err = abs(exp_integral_e1(1.0) - _e1_series(1.0))
    spec = resolve(Kind.FADING_TRADEOFF, None, {"trials": 100_000, "seed": 5})
    t = run_fading_tradeoff(spec, threads=THREADS)
    worst, ok = math.inf, e1_err < 1e-10
    for mean, se, lo, hi in zip(t.column("mean_mmse_mc"), t.column("mean_mmse_se"),
                                t.column("theta_lower"), t.column("theta_upper")):
        margin = min(mean - (lo - 3 * se), (hi + 3 * se) - mean) / se
        worst = min(worst, margin)
        ok &= lo - 3 * se <= mean <= hi + 3 * se
    report(5, ok, f"E1(1) vs series |err| {e1_err:.1e} (<1e-10); a=0.3, n={spec.n_max}, rho grid of {len(t)}: "
                  f"smallest margin inside [Theta_low, Theta_up] +-3se = {worst:.1f} se")


def test_c06_moment_identity():
    sets = (
        GaussMarkovModel(a=0.8, sigma_u2=0.001, mu0=0.0, sigma02=0.1),
        GaussMarkovModel(a=0.95, sigma_u2=0.02, mu0=0.7, sigma02=0.05),
    )
    idx = [0, 5, 10, 50]
    ok, worst = True, 0.0
    for k, model in enumerate(sets):
        def work(rng, size, model=model):
            return {"p": np.abs(sample_states(model, 50, rng, size=size)[:, idx]) ** 2}

        p = run_blocks(work, 1_000_000, seed=6, key=(k,), threads=THREADS)["p"]
        mean, se = mean_and_stderr(p)
        for j, n in enumerate(idx):
            z = abs(mean[j] - second_moment(model, n)) / se[j]
            worst = max(worst, z)
            ok &= z < 4
    report(6, ok, f"1e6 trajectories, n in {idx}, 2 parameter sets: worst |MC - closed form| = {worst:.2f} se (<4)")


def test_c07_hpa_energy():
    closed = 1.0 - math.e * exp_integral_e1(1.0)
    quad = rayleigh_hpa_moment(1.0, HpaParams(a_sat=1.0, beta=1.0))
    err1 = abs(quad - closed)
    err_cf = abs(rayleigh_hpa_moment_beta1(1.0, 1.0) - closed)
    model = GaussMarkovModel(a=0.8, sigma_u2=0.01, mu0=0.0, sigma02=0.01)
    err2 = 0.0
    for n in (0, 1, 5, 20):
        for p in (HpaParams(0.02, 1.0), HpaParams(0.1, 2.0), HpaParams(1.0, 0.5)):
            nu2 = second_moment(model, n)
            err2 = max(err2, abs(hpa_second_moment(n, model, p) - rayleigh_hpa_moment(nu2, p)))
    dom_model = GaussMarkovModel(a=0.8, sigma_u2=0.01, mu0=0.2, sigma02=0.05)
    dominated = all(
        hpa_second_moment(n, dom_model, HpaParams(a_sat, beta)) <= second_moment(dom_model, n)
        for a_sat in (0.01, 0.05, 0.2, 1.0, 5.0)
        for beta in (0.5, 1.0, 2.0, 3.0, 6.0)
        for n in (0, 10, INF)
    )
    report(7, err1 < 1e-8 and err2 < 1e-8 and dominated,
           f"quadrature {quad!r} vs 1-eE1(1) {closed!r}: |err| {err1:.1e} (closed form |err| {err_cf:.1e}); "
           f"Rician(mu0=0) vs Rayleigh(nu2) max |err| {err2:.1e} (<1e-8); 5x5 dominance {dominated}")


def test_c08_linearization_gain():
    rng = np.random.default_rng(np.random.SeedSequence(8))
    worst = 0.0
    for _ in range(1000):
        a_sat = 10 ** rng.uniform(-1, 1)
        p = HpaParams(a_sat, rng.uniform(0.5, 4.0))
        z = a_sat * 10 ** rng.uniform(-2, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        h = 1e-6 * max(1.0, abs(z))
        fd = (hpa_output(z + h, p) - hpa_output(z - h, p)) / (2 * h)
        worst = max(worst, abs(linearization_gain(z, p) - fd) / abs(fd))
    axis = 0.0
    for beta in (0.5, 1.0, 2.0, 5.0):
        p = HpaParams(0.7, beta)
        x = np.geomspace(1e-3, 10, 300)
        t = (x / 0.7) ** (2 * beta)
        exact = (1 + t) ** (-(1 + 2 * beta) / (2 * beta))
        axis = max(axis, float(np.max(np.abs(linearization_gain(x + 0j, p) - exact) / exact)))
    report(8, worst < 1e-5 and axis < 1e-12,
           f"1e3 random points: max |f - fd|/|fd| = {worst:.1e} (<1e-5); real-axis closed form rel err {axis:.1e}")


def test_c09_ekf_degradation():
    spec = resolve(Kind.HPA_MMSE, None, {"trials": 100_000, "seed": 9})
    out = run_blocks(_filter_work(spec, spec.hpa), spec.trials, spec.seed, threads=THREADS)
    m = exact_mean(out["m_upd"])
    steps = np.diff(out["m_upd"], axis=1)
    d, d_se = mean_and_stderr(steps)
    _, lin = mmse_sequence(spec.model, spec.cfg, 1.0, spec.n_max)
    m_inf = steady_state_mmse(spec.model, spec.cfg, 1.0).m_inf
    transient = int(np.argmax((m_inf - lin) < 1e-4 * m_inf))
    strict = bool(np.all(np.diff(m[: transient + 1]) > 0))
    no_drop = bool(np.all(d >= -4 * d_se))
    dominates = bool(np.all(m >= lin))
    linear_regime = replace(spec, hpa=HpaParams(1e9, 1.0), trials=2000)
    lim = run_blocks(_filter_work(linear_regime, linear_regime.hpa), linear_regime.trials, spec.seed)["m_upd"]
    collapse = float(np.max(np.abs(lim / lin - 1)))
    ok = strict and no_drop and dominates and collapse < 1e-6
    report(9, ok, f"strictly increasing for n<={transient} {strict}; no step below -4 paired se {no_drop} "
                  f"(min {float(np.min(d / d_se)):.2f}); EKF >= linear {dominates}; A_sat=1e9 rel dev {collapse:.1e}")


_CLI_ARGS = {
    "mmse-vs-time": [],
    "tradeoff": [],
    "fading-cdf": ["--trials", "20000"],
    "fading-tradeoff": ["--trials", "10000"],
    "hpa-mmse": ["--trials", "10000"],
    "mc-mse": ["--trials", "10000"],
}


def test_c10_determinism(tmp_path):
    bad = []
    for kind, extra in _CLI_ARGS.items():
        blobs = []
        for threads in ("1", "8", "1", "8"):
            out = tmp_path / f"{kind}-{len(blobs)}.csv"
            code = cli_main([kind, "--seed", "2024", "--threads", threads, "--out", str(out), *extra])
            blobs.append(out.read_bytes() if code == 0 else None)
        if blobs[0] is None or any(b != blobs[0] for b in blobs):
            bad.append(kind)
    report(10, not bad, f"6 subcommands x threads {{1, 8}} x 2 reruns byte-identical; mismatches: {bad or 'none'}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
