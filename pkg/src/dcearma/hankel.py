"""Hankel matrices built from impulse responses, and column-selection ranks.

A proper rational filter is stored in zero/pole form,

    H(z) = gain * prod(z - zeros) / (z**p0 * prod(z - poles)),

with ``poles`` the nonzero poles and ``p0`` the multiplicity of the pole at
the origin. Its causal impulse response is the Laurent expansion in 1/z.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from .arma import ArmaModel, separated_roots
from .errors import IndexBelowThreshold, InsufficientImpulseLength
from .linalg import RANK_RTOL, condition_ratio, numerical_rank

__all__ = [
    "RationalFilter",
    "random_stable_filter",
    "hankel_from_impulse",
    "HankelCheck",
    "check_hankel_nonsingular",
    "shifted_hankel_threshold",
    "shifted_hankel_full_rank",
    "RankHistogram",
    "random_column_rank_distribution",
    "exact_column_rank_distribution",
]

CANCEL_TOL = 1e-10


def _cancel(zeros: list[complex], poles: list[complex], tol: float):
    zeros = list(zeros)
    kept_poles = []
    for a in poles:
        for j, z in enumerate(zeros):
            if abs(z - a) <= tol:
                del zeros[j]
                break
        else:
            kept_poles.append(a)
    return zeros, kept_poles


@dataclass(frozen=True)
class RationalFilter:
    zeros: tuple[complex, ...]
    poles: tuple[complex, ...]
    zero_pole_count: int = 0
    gain: float = 1.0

    @classmethod
    def from_roots(cls, zeros, poles, gain: float = 1.0, tol: float = CANCEL_TOL):
        """Build from raw root lists (origin included), cancelling removable pairs."""
        zeros = [complex(z) for z in zeros]
        poles = [complex(a) for a in poles]
        zeros, poles = _cancel(zeros, poles, tol)
        origin = [a for a in poles if abs(a) <= tol]
        nonzero = [a for a in poles if abs(a) > tol]
        if len(zeros) > len(poles):
            raise ValueError("improper filter: more zeros than poles")
        return cls(tuple(zeros), tuple(nonzero), len(origin), float(gain))

    @classmethod
    def from_arma(cls, model: ArmaModel) -> "RationalFilter":
        d = max(model.p, model.q)
        zeros = list(np.roots(model.ma_poly)) + [0.0] * (d - model.q)
        poles = list(np.roots(model.ar_poly)) + [0.0] * (d - model.p)
        return cls.from_roots(zeros, poles)

    @property
    def p(self) -> int:
        """Number of nonzero non-removable poles."""
        return len(self.poles)

    @property
    def order(self) -> int:
        return self.p + self.zero_pole_count

    def impulse(self, length: int) -> np.ndarray:
        delay = self.order - len(self.zeros)
        b = np.real_if_close(np.poly(self.zeros)) if self.zeros else np.array([1.0])
        a = np.real_if_close(np.poly(self.poles)) if self.poles else np.array([1.0])
        x = np.zeros(length)
        if delay < length:
            x[delay] = 1.0
        h = signal.lfilter(np.real(b), np.real(a), x)
        return self.gain * h


def random_stable_filter(
    p: int,
    p_zero: int,
    rng: np.random.Generator,
    lo: float = 0.3,
    hi: float = 0.9,
    sep: float = 0.1,
) -> RationalFilter:
    """Random stable biproper filter with ``p`` nonzero poles and ``p_zero`` at 0.

    Pole and zero moduli are uniform in ``[lo, hi]``, complex ones in conjugate
    pairs. There are ``p + p_zero`` zeros, the count an ARMA transfer function
    of the same order has. Draws where two poles, or a pole and a zero, sit
    closer than ``sep`` are rejected: such filters are numerically
    indistinguishable from lower-order ones at the 1e-8 rank threshold.
    """
    poles, zeros = separated_roots(p, p + p_zero, rng, lo, hi, sep)
    return RationalFilter(tuple(zeros), tuple(poles), p_zero, 1.0)


def hankel_from_impulse(h, size: int, offset: int = 0) -> np.ndarray:
    """``[h[offset + j + k]]`` for ``j, k = 0..size-1``."""
    h = np.asarray(h)
    if size < 0 or offset < 0:
        raise ValueError("size and offset must be nonnegative")
    if size and offset + 2 * (size - 1) >= h.size:
        raise InsufficientImpulseLength(
            f"need {offset + 2 * size - 1} coefficients, have {h.size}"
        )
    idx = offset + np.add.outer(np.arange(size), np.arange(size))
    return h[idx]


@dataclass(frozen=True)
class HankelCheck:
    size: int
    rank: int
    det_estimate: float
    cond_ratio: float

    @property
    def nonsingular(self) -> bool:
        return self.cond_ratio > RANK_RTOL

    full = nonsingular


def check_hankel_nonsingular(filt: RationalFilter) -> HankelCheck:
    """Hankel matrix ``[h[j + k]]`` of size ``p``, the nonzero pole count."""
    k = filt.p
    h = filt.impulse(max(2 * k - 1, 1))
    a = hankel_from_impulse(h, k, 0)
    return HankelCheck(
        size=k,
        rank=numerical_rank(a),
        det_estimate=float(np.linalg.det(a)) if k else 1.0,
        cond_ratio=condition_ratio(a) if k else 1.0,
    )


def shifted_hankel_threshold(filt: RationalFilter) -> int:
    """Smallest admissible shift index ``ceil((p0 + 1) / p) + 1``."""
    if filt.p == 0:
        raise IndexBelowThreshold("filter has no nonzero poles; no admissible index")
    return math.ceil((filt.zero_pole_count + 1) / filt.p) + 1


def shifted_hankel_full_rank(filt: RationalFilter | ArmaModel, i: int) -> HankelCheck:
    """Rank of the ``p x p`` matrix ``[h[i*p - p - 1 + j + k]]``."""
    if isinstance(filt, ArmaModel):
        filt = RationalFilter.from_arma(filt)
    threshold = shifted_hankel_threshold(filt)
    if i < threshold:
        raise IndexBelowThreshold(f"i = {i} below admissible threshold {threshold}")
    p = filt.p
    offset = i * p - p - 1
    h = filt.impulse(offset + 2 * p - 1)
    a = hankel_from_impulse(h, p, offset)
    return HankelCheck(
        size=p,
        rank=numerical_rank(a),
        det_estimate=float(np.linalg.det(a)),
        cond_ratio=condition_ratio(a),
    )


@dataclass
class RankHistogram:
    """Counts of numerical ranks; ``counts[r]`` trials had rank ``r``."""

    counts: np.ndarray
    trials: int

    @property
    def probabilities(self) -> np.ndarray:
        return self.counts / max(self.trials, 1)

    def rows(self):
        return [(r, int(c), self.trials) for r, c in enumerate(self.counts)]

    def merge(self, other: "RankHistogram") -> "RankHistogram":
        size = max(self.counts.size, other.counts.size)
        counts = np.zeros(size, dtype=np.int64)
        counts[: self.counts.size] += self.counts
        counts[: other.counts.size] += other.counts
        return RankHistogram(counts, self.trials + other.trials)


def _masked_ranks(mat: np.ndarray, masks: np.ndarray) -> np.ndarray:
    # zeroing unselected columns leaves the rank of the selection unchanged
    return np.asarray(numerical_rank(mat[None, :, :] * masks[:, None, :]))


def random_column_rank_distribution(
    theta_mat: np.ndarray,
    alpha: float,
    trials: int,
    rng: np.random.Generator,
    chunk: int = 4096,
) -> RankHistogram:
    """Monte Carlo law of ``rank`` of the columns kept by Bernoulli(alpha) flags."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    theta_mat = np.asarray(theta_mat, dtype=float)
    rows, cols = theta_mat.shape
    counts = np.zeros(min(rows, cols) + 1, dtype=np.int64)
    done = 0
    while done < trials:
        k = min(chunk, trials - done)
        masks = (rng.random((k, cols)) < alpha).astype(float)
        ranks = _masked_ranks(theta_mat, masks)
        counts += np.bincount(ranks, minlength=counts.size)
        done += k
    return RankHistogram(counts, trials)


def exact_column_rank_distribution(theta_mat: np.ndarray, alpha: float) -> np.ndarray:
    """Exact rank law by enumerating every column subset (small matrices only)."""
    theta_mat = np.asarray(theta_mat, dtype=float)
    rows, cols = theta_mat.shape
    if cols > 20:
        raise ValueError("exhaustive enumeration limited to 20 columns")
    masks = np.array(list(itertools.product((0.0, 1.0), repeat=cols)))
    ones = masks.sum(axis=1)
    weights = alpha**ones * (1 - alpha) ** (cols - ones)
    ranks = _masked_ranks(theta_mat, masks)
    probs = np.zeros(min(rows, cols) + 1)
    np.add.at(probs, ranks, weights)
    return probs
