"""Random stream derivation.

Every random draw in the package comes from a Philox (counter-based) generator
keyed by a ``SeedSequence``. Independent substreams are addressed by a spawn
key, so stream ``(seed, k)`` is the same object no matter which thread asks
for it or in what order.
"""

from __future__ import annotations

import numpy as np

SEED_MAX = 2**64 - 1


def check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for the substream ``(seed, *key)``."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def as_generator(rng_or_seed) -> np.random.Generator:
    if isinstance(rng_or_seed, np.random.Generator):
        return rng_or_seed
    return make_rng(rng_or_seed)


def complex_normal(rng: np.random.Generator, variance, size=None, mean=0.0):
    """Circularly symmetric complex Gaussian draws with the given total variance.

    Real and imaginary parts are independent with variance ``variance / 2`` each.
    """
    scale = np.sqrt(np.asarray(variance, dtype=float) / 2.0)
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return mean + scale * (re + 1j * im)
