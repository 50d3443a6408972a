"""Numerical rank with the single relative threshold used across the package."""

from __future__ import annotations

import numpy as np

#: singular values at or below ``RANK_RTOL * sigma_max`` count as zero
RANK_RTOL = 1e-8


def singular_values(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return np.zeros(a.shape[:-2] + (0,))
    return np.linalg.svd(a, compute_uv=False)


def numerical_rank(a: np.ndarray, rtol: float = RANK_RTOL) -> int | np.ndarray:
    """Count singular values with ``sigma / sigma_max > rtol``.

    Accepts a stack of matrices (``(..., M, N)``) and then returns an integer
    array. An empty or all-zero matrix has rank 0.
    """
    s = singular_values(a)
    if s.shape[-1] == 0:
        return 0 if s.ndim == 1 else np.zeros(s.shape[:-1], dtype=int)
    smax = s[..., :1]
    with np.errstate(invalid="ignore", divide="ignore"):
        keep = (smax > 0) & (s > rtol * smax)
    r = keep.sum(axis=-1)
    return int(r) if np.ndim(r) == 0 else r


def condition_ratio(a: np.ndarray) -> float:
    """``sigma_min / sigma_max`` over min(shape) singular values (0 for empty)."""
    s = singular_values(a)
    if s.size == 0 or s[0] == 0:
        return 0.0
    return float(s[-1] / s[0])
