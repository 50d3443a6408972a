"""Information-dimension estimators and the closed-form bounds around them.

Units: every entropy here is in bits. The Bernoulli KL divergence is in nats,
because it is only ever consumed inside ``exp(-n * D)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np
from scipy import stats

from .arma import ArmaModel, build_toeplitz, simulate_path
from .distributions import DceDistribution, sample_excitation
from .errors import DegenerateGrid, InvalidBand, SampleStarvation
from .rng import base_seed, stream

__all__ = [
    "quantize",
    "quantize_cells",
    "empirical_entropy",
    "EntropyCurve",
    "RidEstimate",
    "entropy_curve",
    "estimate_rid",
    "estimate_bid_oracle",
    "bid_bounds",
    "estimate_idr",
    "bernoulli_kl",
    "ConcentrationBound",
    "concentration_bounds",
    "min_n_for_concentration",
    "ShiftedEntropyRow",
    "shifted_entropy_check",
    "continuity_chance_bound",
]

Sampler = Union[DceDistribution, Callable[[int, np.random.Generator], np.ndarray]]


def quantize_cells(x, m: int) -> np.ndarray:
    """Integer cell indices ``floor(m * x)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return np.floor(np.asarray(x, dtype=float) * m).astype(np.int64)


def quantize(x, m: int) -> np.ndarray:
    """``floor(m * x) / m`` componentwise."""
    return quantize_cells(x, m) / m


def empirical_entropy(symbols, miller_madow: bool = False) -> float:
    """Plug-in entropy in bits of a sample of discrete symbols.

    A 2-D array is read as one symbol per row. With ``miller_madow`` the
    estimate gets ``(K - 1) / (2 N ln 2)`` added, ``K`` the observed support.
    """
    arr = np.asarray(symbols)
    if arr.size == 0:
        raise ValueError("need at least one symbol")
    if arr.ndim == 1:
        _, counts = np.unique(arr, return_counts=True)
    else:
        _, counts = np.unique(arr.reshape(arr.shape[0], -1), axis=0, return_counts=True)
    n = counts.sum()
    prob = counts / n
    h = float(-(prob * np.log2(prob)).sum())
    if miller_madow:
        h += (counts.size - 1) / (2 * n * math.log(2))
    return max(h, 0.0)


@dataclass
class EntropyCurve:
    """``(m, H([X]_m) in bits, sample count)`` triples for one variable."""

    m: np.ndarray
    entropy_bits: np.ndarray
    samples: np.ndarray
    dimension: int = 1

    def __post_init__(self):
        self.m = np.asarray(self.m, dtype=np.int64)
        self.entropy_bits = np.asarray(self.entropy_bits, dtype=float)
        self.samples = np.asarray(self.samples, dtype=np.int64)
        if np.any(np.diff(self.m) <= 0):
            raise ValueError("m values must be strictly increasing")

    def rows(self):
        return list(zip(self.m.tolist(), self.entropy_bits.tolist(), self.samples.tolist()))


@dataclass(frozen=True)
class RidEstimate:
    slope: float
    stderr: float
    m_range: tuple[int, int]
    method: str
    curve: EntropyCurve | None = field(default=None, compare=False, repr=False)


def _draw(sampler: Sampler, count: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(sampler, DceDistribution):
        return sample_excitation(sampler, count, rng)[0]
    return np.asarray(sampler(count, rng), dtype=float)


def entropy_curve(
    sampler: Sampler,
    m_grid: Sequence[int],
    samples_per_m: int,
    rng: np.random.Generator,
    miller_madow: bool = False,
) -> EntropyCurve:
    """Quantized entropy at each precision, fresh samples for every ``m``."""
    ent, dim = [], 1
    for m in m_grid:
        x = _draw(sampler, samples_per_m, rng)
        dim = 1 if x.ndim == 1 else x.shape[1]
        ent.append(empirical_entropy(quantize_cells(x, int(m)), miller_madow))
    return EntropyCurve(np.asarray(m_grid), np.asarray(ent), np.full(len(ent), samples_per_m), dim)


def estimate_rid(
    sampler: Sampler,
    m_grid: Sequence[int],
    samples_per_m: int,
    rng: np.random.Generator,
    miller_madow: bool = False,
) -> RidEstimate:
    """Slope of ``H([X]_m)`` against ``log2 m`` over the upper half of a dyadic grid."""
    m_grid = [int(m) for m in m_grid]
    if any(m < 1 or m & (m - 1) for m in m_grid):
        raise DegenerateGrid("m_grid must hold powers of two")
    if len(m_grid) < 4:
        raise DegenerateGrid("m_grid needs at least 4 points")
    m_grid = sorted(set(m_grid))
    curve = entropy_curve(sampler, m_grid, samples_per_m, rng, miller_madow)
    top = len(m_grid) - (len(m_grid) + 1) // 2
    ms, hs = curve.m[top:], curve.entropy_bits[top:]
    if ms.size < 2:
        raise DegenerateGrid("fewer than 2 usable grid points")
    fit = stats.linregress(np.log2(ms.astype(float)), hs)
    stderr = float(fit.stderr) if ms.size > 2 else 0.0
    return RidEstimate(
        slope=float(fit.slope),
        stderr=stderr,
        m_range=(int(ms[0]), int(ms[-1])),
        method="miller-madow" if miller_madow else "plug-in",
        curve=curve,
    )


def estimate_bid_oracle(
    model: ArmaModel, n: int, trials: int, rng: np.random.Generator | int
) -> float:
    """Average of ``d_V / n`` over random continuity patterns.

    This is the genie estimate of ``d(X^n) / n``: it never looks at sample
    values, only at the dimension of the affine piece each pattern selects.
    """
    from .affine import NuPattern, singular_dimension

    ts = build_toeplitz(model, n)
    base = base_seed(rng)
    width = n + model.q - model.p
    total = 0
    for t in range(trials):
        flags = stream(base, t).random(width) < model.alpha
        total += singular_dimension(ts, NuPattern(flags, model.p, model.q))
    return total / (trials * n)


def bid_bounds(m: int, p: int, q: int, alpha: float) -> tuple[float, float]:
    """Bounds on ``d(X^{m+p}) / (m + p)``; the tighter of two upper bounds is kept."""
    if m < 1:
        raise ValueError("m must be >= 1")
    denom = m + p
    lower = m * alpha / denom
    upper = min((p + q + m * alpha) / denom, ((m + q) * alpha + p) / denom)
    return lower, upper


def estimate_idr(
    model: ArmaModel,
    m: int,
    n_grid: Sequence[int],
    samples: int,
    rng: np.random.Generator,
    miller_madow: bool = False,
) -> list[tuple[int, float]]:
    """``H([X^n]_m) / (n log2 m)`` for a few small block lengths.

    A finite-scale probe only; it does not resolve the double limit. Blocks
    are consecutive non-overlapping windows of one stationary path.
    """
    if len(n_grid) > 3 or any(n < 1 or n > 3 for n in n_grid):
        raise ValueError("n_grid: at most 3 entries, each in 1..3")
    if not 2 <= m <= 64:
        raise ValueError("m must lie in 2..64")
    out = []
    for n in n_grid:
        cells = m**n
        if cells > 10**6:
            raise SampleStarvation(f"m^n = {cells} exceeds the 1e6-cell cap")
        if samples < 100 * cells:
            raise SampleStarvation(f"need at least {100 * cells} samples for m={m}, n={n}")
        path = simulate_path(model, samples * n, rng)
        blocks = path.x.reshape(samples, n)
        h = empirical_entropy(quantize_cells(blocks, m), miller_madow)
        out.append((int(n), h / (n * math.log2(m))))
    return out


def bernoulli_kl(r: float, alpha: float) -> float:
    """``D(Bern(r) || Bern(alpha))`` in nats, ``0 ln 0 = 0``, ``inf`` off-support."""
    if not (0.0 <= r <= 1.0 and 0.0 <= alpha <= 1.0):
        raise ValueError("arguments must lie in [0, 1]")
    total = 0.0
    for a, b in ((r, alpha), (1.0 - r, 1.0 - alpha)):
        if a == 0.0:
            continue
        if b == 0.0:
            return math.inf
        total += a * math.log(a / b)
    return max(total, 0.0)


@dataclass(frozen=True)
class ConcentrationBound:
    """Lower bounds on ``Pr(d > k)`` and ``Pr(d < k)``; 0 where void."""

    k: float
    p_above: float
    p_below: float
    regime: str


def _tail(n_eff: int, r: float, alpha: float) -> float:
    d = bernoulli_kl(r, alpha)
    if math.isinf(d):
        return 1.0
    return -math.expm1(-n_eff * d)


def concentration_bounds(
    n: int, p: int, q: int, alpha: float, k: float, variant: str = "theorem"
) -> ConcentrationBound:
    """Exponential tail bounds on the singular dimension ``d_V`` around ``alpha n``.

    ``variant="appendix"`` uses ``(k + q) / (n + q - p)`` in the upper-tail
    ratio instead of ``(k + q - p) / (n + q - p)``.
    """
    if n <= p:
        raise ValueError("need n > p")
    width = n + q - p
    num = k + q if variant == "appendix" else k + q - p
    if variant not in ("theorem", "appendix"):
        raise ValueError(f"unknown variant {variant!r}")
    r_above = num / width
    r_below = (k - p) / (n - p)
    if 0.0 <= r_above < alpha:
        return ConcentrationBound(k, _tail(width, r_above, alpha), 0.0, "above")
    if alpha < r_below <= 1.0:
        return ConcentrationBound(k, 0.0, _tail(width, r_below, alpha), "below")
    return ConcentrationBound(k, 0.0, 0.0, "void")


def min_n_for_concentration(p: int, q: int, alpha: float, eps: float, delta: float) -> int:
    """Smallest block length for which ``|d_V/n - alpha| < delta`` w.p. ``>= 1 - eps``."""
    if not (0.0 < delta < min(alpha, 1.0 - alpha)) or not (0.0 < eps < 1.0):
        raise InvalidBand(f"need 0 < delta < min(alpha, 1-alpha) and 0 < eps < 1")
    log_term = -math.log(eps / 2)
    candidates = (
        2 * (q * (1 + delta / 2 - alpha) - p) / delta,
        log_term / bernoulli_kl(alpha - delta / 2, alpha) - q,
        2 * p / delta,
        log_term / bernoulli_kl(alpha + delta / 2, alpha) - q,
    )
    return max(math.ceil(max(candidates)), p + 2)


@dataclass(frozen=True)
class ShiftedEntropyRow:
    eps: float
    lhs_bits: float
    base_bits: float
    c: int
    const: float
    bound: float
    holds: bool


def shifted_entropy_check(
    dist: Sampler,
    eps_grid: Sequence[float],
    samples: int,
    rng: np.random.Generator,
    slack: float = 0.05,
) -> list[ShiftedEntropyRow]:
    """Check ``H([X + eps]_1) <= 4 H([X]_1) + log2(c + 1) - 8/3`` on a sample.

    ``c`` is the smallest nonnegative integer with ``Pr(|X| > c) < 1/4``
    (empirically). The inequality is accepted within ``slack`` bits.
    """
    x = _draw(dist, samples, rng)
    base = empirical_entropy(np.floor(x).astype(np.int64))
    ax = np.abs(x)
    c = 0
    while np.mean(ax > c) >= 0.25:
        c += 1
    const = math.log2(c + 1) - 8.0 / 3.0
    bound = 4 * base + const
    rows = []
    for e in eps_grid:
        if not -1.0 < e < 1.0:
            raise ValueError("eps must lie in (-1, 1)")
        lhs = empirical_entropy(np.floor(x + e).astype(np.int64))
        rows.append(ShiftedEntropyRow(float(e), lhs, base, c, const, bound, lhs <= bound + slack))
    return rows


def continuity_chance_bound(d: float, p: int, t: int, i0: int) -> float:
    """``1 - (1 - d**p) ** (t - i0)``."""
    if t < i0:
        raise ValueError("need t >= i0")
    return 1.0 - (1.0 - d**p) ** (t - i0)
