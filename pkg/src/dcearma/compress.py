"""Linear compression of ARMA blocks with decoders that work component-wise.

Encoders are Gaussian matrices. A decoder is handed one (or a short list
of) affine components and solves a least-squares problem on each; recovery
is exact once the number of measurements reaches the component dimension.
Each trial draws one ``n x n`` encoder and uses its first ``floor(R n)``
rows, so measurement sets are nested across rates for the same trial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .affine import NuPattern, SingularComponent, build_component
from .arma import ArmaModel, build_toeplitz, simulate_path
from .errors import IllConditioned
from .linalg import singular_values
from .rng import base_seed, stream

__all__ = [
    "gaussian_encoder",
    "linear_encode",
    "DecodeResult",
    "decode_on_component",
    "RateTrialConfig",
    "RateTrialResult",
    "rate_trial",
    "rate_curve",
    "transition_midpoint",
]

COND_FLOOR = 1e-10
SEARCH_RESIDUAL = 1e-8


def gaussian_encoder(rows: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """``rows x n`` matrix with i.i.d. N(0, 1/n) entries."""
    return rng.normal(0.0, 1.0 / math.sqrt(n), size=(rows, n))


def linear_encode(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=float) @ np.asarray(x, dtype=float)


@dataclass(frozen=True)
class DecodeResult:
    x_hat: np.ndarray
    residual: float
    cond_ratio: float


def decode_on_component(y, a, comp: SingularComponent) -> DecodeResult:
    """Least-squares fit of ``y`` by ``a @ (basis @ c + offset)``.

    Raises ``IllConditioned`` when ``a @ basis`` does not have numerically
    full column rank (``sigma_min / sigma_max < 1e-10``), which includes every
    case with fewer measurements than the component dimension.
    """
    y = np.asarray(y, dtype=float)
    a = np.asarray(a, dtype=float)
    if a.shape[0] < 1:
        raise ValueError("need at least one measurement")
    target = y - a @ comp.offset
    if comp.dim == 0:
        return DecodeResult(comp.offset.copy(), float(np.linalg.norm(target)), 1.0)
    ab = a @ comp.basis
    if ab.shape[0] < ab.shape[1]:
        raise IllConditioned(f"{ab.shape[0]} measurements for a {ab.shape[1]}-dim component")
    s = singular_values(ab)
    ratio = float(s[-1] / s[0]) if s[0] > 0 else 0.0
    if ratio < COND_FLOOR:
        raise IllConditioned(f"sigma ratio {ratio:.3g} below {COND_FLOOR}")
    coef, *_ = np.linalg.lstsq(ab, target, rcond=None)
    resid = float(np.linalg.norm(ab @ coef - target))
    return DecodeResult(comp.basis @ coef + comp.offset, resid, ratio)


@dataclass(frozen=True)
class RateTrialConfig:
    """One point of a rate sweep.

    ``decoder_mode`` is ``"genie"`` (true pattern and atoms are known) or
    ``"search"``, which tries ``search_k`` candidate components, the true
    one among ``search_k - 1`` prior draws, in order of decreasing pattern
    likelihood and keeps the first that explains ``y``.
    """

    n: int
    rate: float
    trials: int
    decoder_mode: str = "genie"
    search_k: int = 64
    success_tol: float = 1e-6

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError("rate must lie in [0, 1]")
        if self.decoder_mode not in ("genie", "search"):
            raise ValueError(f"unknown decoder mode {self.decoder_mode!r}")
        if self.decoder_mode == "search" and self.search_k < 1:
            raise ValueError("search_k must be >= 1")

    @property
    def measurements(self) -> int:
        # guard against 0.7 * 80 = 55.99999...
        return int(math.floor(self.rate * self.n + 1e-9))


@dataclass(frozen=True)
class RateTrialResult:
    config: RateTrialConfig
    successes: int
    measurement_count: int
    mean_dv: float
    outcomes: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def success_fraction(self) -> float:
        return self.successes / self.config.trials

    def row(self):
        c = self.config
        return (c.n, c.rate, self.measurement_count, c.trials, self.successes, self.mean_dv)


@dataclass
class _Trial:
    x: np.ndarray
    comp: SingularComponent
    encoder: np.ndarray
    candidates: list


def _log_likelihood(flags: np.ndarray, alpha: float) -> float:
    k = int(flags.sum())
    lo = 0.0
    if k:
        lo += k * math.log(alpha) if alpha > 0 else -math.inf
    if flags.size - k:
        lo += (flags.size - k) * math.log1p(-alpha) if alpha < 1 else -math.inf
    return lo


def _prepare(model, ts, base, t, mode, k) -> _Trial:
    rng = stream(base, t)
    n = ts.n
    path = simulate_path(model, n, rng)
    pattern = NuPattern.from_path(path)
    comp = build_component(model, ts, pattern, path.xi)
    encoder = gaussian_encoder(n, n, rng)
    candidates = []
    if mode == "search":
        pool = [(pattern.flags, path.xi)]
        dist = model.excitation
        for _ in range(k - 1):
            flags = rng.random(pattern.flags.size) < model.alpha
            atoms = dist.sample_atoms(pattern.flags.size, rng) if dist.atoms else np.zeros(flags.size)
            pool.append((flags, atoms))
        order = rng.permutation(len(pool))
        keyed = sorted(order, key=lambda j: -_log_likelihood(pool[j][0], model.alpha))
        candidates = [
            build_component(model, ts, NuPattern(pool[j][0], model.p, model.q), pool[j][1])
            for j in keyed
        ]
    return _Trial(path.x, comp, encoder, candidates)


def _recovered(x_hat, x, tol) -> bool:
    return float(np.max(np.abs(x_hat - x)) / (1.0 + np.max(np.abs(x)))) < tol


def _decode_trial(tr: _Trial, m: int, cfg: RateTrialConfig) -> bool:
    if m < 1:
        return False
    a = tr.encoder[:m]
    y = linear_encode(a, tr.x)
    if cfg.decoder_mode == "genie":
        try:
            res = decode_on_component(y, a, tr.comp)
        except IllConditioned:
            return False
        return _recovered(res.x_hat, tr.x, cfg.success_tol)
    scale = float(np.linalg.norm(y))
    for comp in tr.candidates:
        try:
            res = decode_on_component(y, a, comp)
        except IllConditioned:
            continue
        if res.residual < SEARCH_RESIDUAL * scale:
            return _recovered(res.x_hat, tr.x, cfg.success_tol)
    return False


def rate_curve(
    model: ArmaModel,
    n: int,
    rate_grid: Sequence[float],
    trials: int,
    rng: np.random.Generator | int,
    decoder_mode: str = "genie",
    search_k: int = 64,
    success_tol: float = 1e-6,
) -> list[RateTrialResult]:
    """Success counts over a grid of rates, sharing paths and encoders across rates."""
    base = base_seed(rng)
    configs = [
        RateTrialConfig(n, float(r), trials, decoder_mode, search_k, success_tol) for r in rate_grid
    ]
    outcomes = np.zeros((len(configs), trials), dtype=bool)
    dv = np.zeros(trials)
    ts = build_toeplitz(model, n)
    for t in range(trials):
        tr = _prepare(model, ts, base, t, decoder_mode, search_k)
        dv[t] = tr.comp.dim
        for i, cfg in enumerate(configs):
            outcomes[i, t] = _decode_trial(tr, cfg.measurements, cfg)
    return [
        RateTrialResult(cfg, int(outcomes[i].sum()), cfg.measurements, float(dv.mean()), outcomes[i])
        for i, cfg in enumerate(configs)
    ]


def rate_trial(
    model: ArmaModel, cfg: RateTrialConfig, rng: np.random.Generator | int
) -> RateTrialResult:
    """Run ``cfg.trials`` simulate-encode-decode rounds at one rate."""
    (res,) = rate_curve(
        model, cfg.n, [cfg.rate], cfg.trials, rng, cfg.decoder_mode, cfg.search_k, cfg.success_tol
    )
    return replace(res, config=cfg)


def transition_midpoint(results: Sequence[RateTrialResult], level: float = 0.5) -> float:
    """Rate where the success fraction first crosses ``level`` (linear interpolation)."""
    pts = sorted((r.config.rate, r.success_fraction) for r in results)
    for (r0, f0), (r1, f1) in zip(pts, pts[1:]):
        if f0 < level <= f1:
            return r0 + (level - f0) * (r1 - r0) / (f1 - f0)
    if pts and pts[0][1] >= level:
        return pts[0][0]
    return math.nan
