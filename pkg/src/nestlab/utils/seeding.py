"""
Seed handling for sampled experiments.

Every trial draws from its own generator spawned from the master seed,
so results do not depend on the order in which trials are scheduled.
"""

import numpy as np

MAX_SEED = (1 << 64) - 1


def parse_seed(value) -> int:
    """An unsigned 64-bit seed from an int or a decimal/hex string."""
    if isinstance(value, bool):
        raise ValueError("seed must be an integer")
    seed = int(value, 0) if isinstance(value, str) else int(value)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must lie in [0, 2^64), got {seed}")
    return seed


def trial_generators(seed: int, count: int, stream: int = 0) -> list[np.random.Generator]:
    """
    `count` independent generators for one stream of trials.

    Distinct streams of one command (e.g. two suites) never share draws.
    """
    root = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    return [np.random.default_rng(child) for child in root.spawn(count)]
