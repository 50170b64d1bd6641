"""Deterministic seed handling.

Every random draw in the package goes through a ``numpy.random.Generator``
built from a 64-bit root seed plus an optional tuple of integer keys, so that
child streams (per shard, per repeat, per retry) are reproducible and
independent of execution order.
"""

import numpy as np

SEED_MASK = (1 << 64) - 1


def _check_seed(seed):
    if isinstance(seed, (bool, np.bool_)) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if seed < 0 or seed > SEED_MASK:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def make_rng(seed, *keys):
    seq = np.random.SeedSequence(_check_seed(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.default_rng(seq)


def derive_seed(seed, *keys):
    """Return a child 64-bit seed for ``(seed, *keys)``."""
    seq = np.random.SeedSequence(_check_seed(seed), spawn_key=tuple(int(k) for k in keys))
    lo, hi = seq.generate_state(2, np.uint32)
    return int(lo) | (int(hi) << 32)
