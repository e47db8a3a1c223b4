"""Deterministic, thread-parallel Monte Carlo over fixed trial blocks.

Trials are cut into blocks of :data:`BLOCK_SIZE`. Block ``b`` of work unit
``key`` draws from the stream ``(seed, *key, b)`` and writes into its own
slot, so the result does not depend on the number of threads. Means are
taken with ``math.fsum``, which is exactly rounded and therefore independent
of summation order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Mapping, Sequence

import numpy as np

from ..streams import make_rng

BLOCK_SIZE = 4096


def block_sizes(trials: int, block_size: int = BLOCK_SIZE) -> list[int]:
    full, rest = divmod(trials, block_size)
    return [block_size] * full + ([rest] if rest else [])


def run_blocks(
    work: Callable[[np.random.Generator, int], Mapping[str, np.ndarray]],
    trials: int,
    seed: int,
    key: Sequence[int] = (),
    threads: int = 1,
    block_size: int = BLOCK_SIZE,
) -> dict[str, np.ndarray]:
    """Run ``work(rng, size)`` on every block and stack the per-trial outputs.

    ``work`` returns arrays whose first axis has length ``size``.
    """
    sizes = block_sizes(trials, block_size)

    def one(b: int):
        return work(make_rng(seed, *key, b), sizes[b])

    if threads <= 1 or len(sizes) == 1:
        parts = [one(b) for b in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(one, range(len(sizes))))
    return {name: np.concatenate([p[name] for p in parts], axis=0) for name in parts[0]}


def exact_mean(samples: np.ndarray) -> np.ndarray:
    """Column means of a ``(trials, ...)`` array with exactly rounded sums."""
    samples = np.asarray(samples, dtype=float)
    flat = samples.reshape(samples.shape[0], -1)
    sums = np.array([math.fsum(col) for col in flat.T])
    return (sums / samples.shape[0]).reshape(samples.shape[1:])


def mean_and_stderr(samples: np.ndarray):
    """Column means and standard errors (sample std over sqrt(trials))."""
    samples = np.asarray(samples, dtype=float)
    trials = samples.shape[0]
    mean = exact_mean(samples)
    if trials < 2:
        return mean, np.full_like(mean, np.nan)
    var = exact_mean((samples - mean) ** 2) * trials / (trials - 1)
    return mean, np.sqrt(var / trials)
