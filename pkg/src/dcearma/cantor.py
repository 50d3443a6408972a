"""Bernoulli convolutions, the Cantor function, and lagged joint samples."""

from __future__ import annotations

import numpy as np

from .arma import ArmaModel, simulate_path
from .distributions import DceDistribution

__all__ = ["sample_bernoulli_convolution", "cantor_function", "cantor_cdf", "joint_scatter"]


def sample_bernoulli_convolution(
    a: float, depth: int, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Draws of ``sum_{k=0}^{depth} a**k * s_k`` with i.i.d. random signs ``s_k``."""
    if not 0.0 < a < 1.0:
        raise ValueError("a must lie in (0, 1)")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    signs = rng.integers(0, 2, size=(count, depth + 1), dtype=np.int8) * 2 - 1
    return signs @ (a ** np.arange(depth + 1))


def cantor_function(u, digits: int = 64) -> np.ndarray:
    """Standard Cantor function on [0, 1], clamped outside.

    Reads ternary digits until the first 1; digits 0/2 become binary 0/1.
    """
    u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    out = np.zeros_like(u)
    live = u < 1.0
    out[~live] = 1.0
    frac = u.copy()
    scale = 0.5
    for _ in range(digits):
        if not live.any():
            break
        frac = frac * 3.0
        d = np.floor(frac)
        frac -= d
        hit_one = live & (d == 1)
        out[hit_one] += scale
        two = live & (d == 2)
        out[two] += scale
        live &= d != 1
        scale *= 0.5
    return out


def cantor_cdf(x) -> np.ndarray:
    """CDF of ``sum_k 3**-k s_k``: the Cantor function on ``[-3/2, 3/2]``."""
    return cantor_function((np.asarray(x, dtype=float) + 1.5) / 3.0)


def joint_scatter(
    model: ArmaModel, lag: int, count: int, rng: np.random.Generator
) -> list[tuple[float, float, int]]:
    """``(X_t, X_{t+lag}, tagged)`` for ``count`` consecutive ``t`` on one path.

    ``tagged`` is 1 when every excitation sample at times ``t+1..t+lag`` was
    an atom, so the pair sits on one of finitely many lines.
    """
    if lag < 1:
        raise ValueError("lag must be >= 1")
    t0 = max(1, model.p - model.q)
    path = simulate_path(model, t0 + count - 1 + lag, rng)
    rows = []
    for t in range(t0, t0 + count):
        flags = [path.nu_at(s) for s in range(t + 1, t + lag + 1)]
        rows.append((float(path.x[t - 1]), float(path.x[t + lag - 1]), int(not any(flags))))
    return rows
