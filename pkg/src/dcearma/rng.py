"""Reproducible random streams.

Every stream is a Philox (counter-based) generator keyed by a master seed and
an optional tuple of integer sub-keys, so a Monte Carlo trial can derive its
own stream from ``(seed, trial)`` independently of how many other trials ran
before it or on which worker.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["stream", "substream", "base_seed", "resolve_seed", "SEED_ENV"]

SEED_ENV = "DCE_ARMA_SEED"


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Return the Philox generator identified by ``seed`` and ``keys``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))


def substream(rng: np.random.Generator | int, *keys: int) -> np.random.Generator:
    """Derive a child stream from a parent generator or a bare seed.

    A generator parent contributes one 64-bit draw as the child's master
    seed; this keeps call sites that only hold a generator reproducible.
    """
    if isinstance(rng, (int, np.integer)):
        return stream(int(rng), *keys)
    base = int(rng.integers(0, 2**63 - 1))
    return stream(base, *keys)


def base_seed(rng: np.random.Generator | int) -> int:
    """Master seed for a batch of per-trial streams."""
    if isinstance(rng, (int, np.integer)):
        return int(rng)
    return int(rng.integers(0, 2**63 - 1))


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        return int(env)
    return 0
