"""Seed handling shared by every randomized scan."""

import os
import random

DEFAULT_SEED = 0xA5F00D


def resolve_seed(seed: int | None = None) -> int:
    """Explicit seed, else ``RMA_SEED`` from the environment, else the default."""
    if seed is not None:
        return int(seed)
    env = os.environ.get("RMA_SEED")
    if env:
        return int(env, 0)
    return DEFAULT_SEED


def rng(seed: int | None = None, stream: str = "") -> random.Random:
    """Independent deterministic stream for a named purpose."""
    return random.Random(f"{resolve_seed(seed)}:{stream}")
