"""Table recipes behind the CLI: each returns ``(header, rows)`` for a CSV.

The preset models are the ones the demos and the figure commands use when
no model file is given.
"""

from __future__ import annotations

import numpy as np

from .affine import check_concentration, empirical_dimension_histogram
from .arma import ArmaModel
from .cantor import cantor_cdf, joint_scatter, sample_bernoulli_convolution
from .compress import rate_curve
from .dimension import bid_bounds, estimate_bid_oracle, estimate_idr, estimate_rid
from .distributions import bernoulli_gaussian, rademacher
from .hankel import (
    RationalFilter,
    check_hankel_nonsingular,
    random_stable_filter,
    shifted_hankel_full_rank,
    shifted_hankel_threshold,
)
from .rng import stream

# AR(2) with poles 0.5 +- 0.3j
AR2_HALF = ArmaModel((-1.0, 0.34), (), bernoulli_gaussian(0.5))
# (2, 3) model: poles 0.4, 0.5; zeros -0.5, 0.3 +- 0.4j
ARMA23_SIXTY = ArmaModel((-0.9, 0.2), (-0.1, -0.05, 0.125), bernoulli_gaussian(0.6))
# X_t = X_{t-1}/3 + xi_t
AR1_THIRD = ArmaModel((-1.0 / 3.0,), (), bernoulli_gaussian(0.5))
AR1_RADEMACHER = ArmaModel((-1.0 / 3.0,), (), rademacher())
ARMA11_HALF = ArmaModel((-0.5,), (0.4,), bernoulli_gaussian(0.5))

BID_ORACLE_M = (1, 2, 5, 10, 20, 50, 100, 200)


def bid_table(model: ArmaModel, m_max: int = 200, trials: int = 1000, seed: int = 0):
    header = ("m", "lower", "upper", "oracle_estimate", "trials")
    rows = []
    for m in range(1, m_max + 1):
        lo, hi = bid_bounds(m, model.p, model.q, model.alpha)
        if m in BID_ORACLE_M and trials > 0:
            est = estimate_bid_oracle(model, m + model.p, trials, stream(seed, m))
            rows.append((m, lo, hi, est, trials))
        else:
            rows.append((m, lo, hi, None, None))
    return header, rows


def rid_table(model: ArmaModel, m_grid, samples: int, seed: int = 0):
    est = estimate_rid(model.excitation, m_grid, samples, stream(seed))
    return ("m", "entropy_bits", "samples"), est.curve.rows(), est


def idr_table(model: ArmaModel, m: int, n_grid, samples: int, seed: int = 0):
    vals = estimate_idr(model, m, n_grid, samples, stream(seed))
    return ("n", "m", "normalized_entropy", "samples"), [(n, m, v, samples) for n, v in vals]


def histogram_table(model: ArmaModel, n: int, trials: int, seed: int = 0):
    hist = empirical_dimension_histogram(model, n, trials, seed)
    return ("d_v", "count", "trials", "n", "p", "q", "alpha"), hist.rows(), hist


def concentration_table(model: ArmaModel, n: int, trials: int, k_grid=None, seed: int = 0):
    hist = empirical_dimension_histogram(model, n, trials, seed)
    k_grid = range(n + 1) if k_grid is None else k_grid
    rows = [
        (r.k, r.regime, r.empirical, r.bound, r.slack, r.satisfied)
        for r in check_concentration(hist, k_grid)
    ]
    return ("k", "regime", "empirical", "bound", "slack", "satisfied"), rows


def rate_table(model, n, rates, trials, seed=0, mode="genie", search_k=64, tol=1e-6):
    results = rate_curve(model, n, rates, trials, seed, mode, search_k, tol)
    header = ("n", "rate", "measurements", "trials", "successes", "mean_dv")
    return header, [r.row() for r in results], results


def hankel_table(filters: int = 200, seed: int = 0, model: ArmaModel | None = None):
    header = ("filter", "p", "p_zero", "check", "i", "size", "rank", "full", "cond_ratio")
    rows = []
    if model is not None:
        specs = [RationalFilter.from_arma(model)]
    else:
        specs = []
        for f in range(filters):
            rng = stream(seed, f)
            specs.append(random_stable_filter(int(rng.integers(1, 5)), int(rng.integers(0, 4)), rng))
    for f, filt in enumerate(specs):
        c = check_hankel_nonsingular(filt)
        rows.append((f, filt.p, filt.zero_pole_count, "hankel", None, c.size, c.rank, c.nonsingular, c.cond_ratio))
        if filt.p == 0:
            continue
        th = shifted_hankel_threshold(filt)
        for i in (th, th + 1):
            s = shifted_hankel_full_rank(filt, i)
            rows.append((f, filt.p, filt.zero_pole_count, "shifted", i, s.size, s.rank, s.full, s.cond_ratio))
    return header, rows


def cantor_table(a: float = 1 / 3, depth: int = 25, count: int = 100_000, seed: int = 0, grid: int = 601):
    x = np.sort(sample_bernoulli_convolution(a, depth, count, stream(seed)))
    bound = 1.0 / (1.0 - a)
    pts = np.linspace(-bound, bound, grid)
    ecdf = np.searchsorted(x, pts, side="right") / count
    rows = []
    for xi, e in zip(pts, ecdf):
        exact = float(cantor_cdf(xi)) if abs(a - 1 / 3) < 1e-15 else None
        rows.append((float(xi), float(e), exact))
    return ("x", "empirical_cdf", "cantor_cdf"), rows


def scatter_table(model: ArmaModel, lag: int = 1, count: int = 2000, seed: int = 0):
    return ("x_t", "x_t_lag", "all_discrete"), joint_scatter(model, lag, count, stream(seed))
