"""Affine singular pieces of the law of an ARMA block.

Given which excitation samples in the window were continuous draws (the
pattern ``nu``), the block ``X^n`` lives on an affine set of dimension

    d_V = p + rank(Theta[:, nu == 1]).

The direction space is the range of ``inv(Phi_hat) @ Theta_hat @ U`` where
``U`` keeps the ``p`` boundary coordinates and the continuous slots; the
offset comes from the atom values sitting in the discrete slots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arma import ArmaModel, SamplePath, ToeplitzSet, build_toeplitz
from .dimension import concentration_bounds
from .errors import AtomAssignmentMismatch, DimensionMismatch
from .linalg import RANK_RTOL, singular_values
from .rng import base_seed, stream

__all__ = [
    "NuPattern",
    "SingularComponent",
    "banded_selection_rank",
    "singular_dimension",
    "selection_matrix",
    "build_component",
    "component_for_path",
    "verify_membership",
    "DimensionHistogram",
    "empirical_dimension_histogram",
    "ConcentrationRow",
    "check_concentration",
]


@dataclass(frozen=True)
class NuPattern:
    """Continuity flags for excitation times ``p - q + 1 .. n``."""

    flags: np.ndarray
    p: int
    q: int

    def __post_init__(self):
        flags = np.asarray(self.flags).astype(bool).ravel()
        flags.setflags(write=False)
        object.__setattr__(self, "flags", flags)

    @property
    def n(self) -> int:
        return self.flags.size - self.q + self.p

    @property
    def window(self) -> range:
        return range(self.p - self.q + 1, self.n + 1)

    @property
    def popcount(self) -> int:
        return int(self.flags.sum())

    @classmethod
    def from_path(cls, path: SamplePath) -> "NuPattern":
        return cls(path.nu, path.p, path.q)


def _check_pattern(ts: ToeplitzSet, pattern: NuPattern) -> None:
    if pattern.flags.size != ts.theta_mat.shape[1] or pattern.p != ts.p:
        raise DimensionMismatch(
            f"pattern of length {pattern.flags.size} does not fit a block with "
            f"n={ts.n}, p={ts.p}, q={ts.q}"
        )


def banded_selection_rank(theta_mat: np.ndarray, q: int, flags, rtol: float = RANK_RTOL) -> int:
    """Numerical rank of ``theta_mat[:, flags]`` for a band of ``q + 1`` diagonals.

    Column ``c`` only touches rows ``c - q .. c``, so selected columns more
    than ``q`` apart share no rows and the selection is block diagonal after
    dropping empty rows. The singular values are those of the blocks, so
    thresholding them against the global maximum gives the same rank as one
    SVD of the whole selection, at a fraction of the cost.
    """
    cols = np.flatnonzero(flags)
    if cols.size == 0:
        return 0
    rows = theta_mat.shape[0]
    cuts = np.flatnonzero(np.diff(cols) > q) + 1
    sv = []
    for block in np.split(cols, cuts):
        r0, r1 = max(block[0] - q, 0), min(block[-1], rows - 1)
        if r1 >= r0:
            sv.append(singular_values(theta_mat[r0 : r1 + 1, block]))
    s = np.concatenate(sv) if sv else np.zeros(0)
    if s.size == 0 or s.max() == 0.0:
        return 0
    return int((s > rtol * s.max()).sum())


def singular_dimension(ts: ToeplitzSet, pattern: NuPattern) -> int:
    """``p`` plus the numerical rank of the flagged columns of ``Theta``."""
    _check_pattern(ts, pattern)
    return ts.p + banded_selection_rank(ts.theta_mat, ts.q, pattern.flags)


def selection_matrix(ts: ToeplitzSet, pattern: NuPattern) -> np.ndarray:
    """Block-diagonal ``[I_p, 0; 0, I[:, nu]]`` of shape ``(n+q, p+popcount)``."""
    _check_pattern(ts, pattern)
    p, w = ts.p, pattern.flags.size
    cols = np.flatnonzero(pattern.flags)
    u = np.zeros((p + w, p + cols.size))
    u[:p, :p] = np.eye(p)
    u[p + cols, p + np.arange(cols.size)] = 1.0
    return u


@dataclass(frozen=True)
class SingularComponent:
    pattern: NuPattern
    dim: int
    basis: np.ndarray
    offset: np.ndarray
    atom_assignment: np.ndarray


def _atom_vector(pattern: NuPattern, atom_assignment) -> np.ndarray:
    a = np.asarray(atom_assignment, dtype=float).ravel()
    w = pattern.flags.size
    zeros = ~pattern.flags
    v = np.zeros(w)
    if a.size == w:
        v[zeros] = a[zeros]
    elif a.size == int(zeros.sum()):
        v[zeros] = a
    else:
        raise AtomAssignmentMismatch(
            f"{a.size} atom values for {int(zeros.sum())} discrete slots"
        )
    return v


def build_component(
    model: ArmaModel, ts: ToeplitzSet, pattern: NuPattern, atom_assignment
) -> SingularComponent:
    """Orthonormal basis and offset of the affine piece picked by ``pattern``.

    ``atom_assignment`` holds either one value per discrete slot, or a full
    window-length vector whose continuous entries are ignored.
    """
    _check_pattern(ts, pattern)
    prop = ts.propagator()
    mixed = prop @ selection_matrix(ts, pattern)
    dim = singular_dimension(ts, pattern)
    if mixed.shape[1]:
        q_mat, _, _ = np.linalg.svd(mixed, full_matrices=False)
        basis = q_mat[:, :dim]
    else:
        basis = np.zeros((ts.n, 0))
    v = _atom_vector(pattern, atom_assignment)
    offset = prop @ np.r_[np.zeros(ts.p), v]
    return SingularComponent(pattern, dim, basis, offset, v[~pattern.flags])


def component_for_path(
    model: ArmaModel, path: SamplePath, ts: ToeplitzSet | None = None
) -> SingularComponent:
    """The component a simulated path actually fell into."""
    ts = ts if ts is not None else build_toeplitz(model, path.n)
    pattern = NuPattern.from_path(path)
    return build_component(model, ts, pattern, path.xi)


def verify_membership(path: SamplePath, comp: SingularComponent) -> float:
    """Relative distance of ``path.x`` from ``comp`` (offset + span of basis)."""
    d = path.x - comp.offset
    r = d - comp.basis @ (comp.basis.T @ d)
    return float(np.linalg.norm(r) / (1.0 + np.linalg.norm(path.x)))


@dataclass
class DimensionHistogram:
    counts: np.ndarray
    trials: int
    n: int
    p: int
    q: int
    alpha: float

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.counts.size)

    @property
    def mean_normalized(self) -> float:
        return float((self.support * self.counts).sum() / (self.trials * self.n))

    def tail_above(self, k: float) -> float:
        return float(self.counts[self.support > k].sum() / self.trials)

    def tail_below(self, k: float) -> float:
        return float(self.counts[self.support < k].sum() / self.trials)

    def band_probability(self, delta: float) -> float:
        """Empirical ``Pr(|d_V / n - alpha| < delta)``."""
        inside = np.abs(self.support / self.n - self.alpha) < delta
        return float(self.counts[inside].sum() / self.trials)

    def rows(self):
        return [
            (d, int(c), self.trials, self.n, self.p, self.q, self.alpha)
            for d, c in enumerate(self.counts)
            if c
        ]

    def merge(self, other: "DimensionHistogram") -> "DimensionHistogram":
        if (self.n, self.p, self.q, self.alpha) != (other.n, other.p, other.q, other.alpha):
            raise ValueError("histograms describe different experiments")
        return DimensionHistogram(
            self.counts + other.counts, self.trials + other.trials,
            self.n, self.p, self.q, self.alpha,
        )


def empirical_dimension_histogram(
    model: ArmaModel, n: int, trials: int, rng: np.random.Generator | int
) -> DimensionHistogram:
    """Tally ``d_V`` over ``trials`` Bernoulli(alpha) continuity patterns."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ts = build_toeplitz(model, n)
    base = base_seed(rng)
    width = n + model.q - model.p
    counts = np.zeros(n + 1, dtype=np.int64)
    for t in range(trials):
        flags = stream(base, t).random(width) < model.alpha
        counts[singular_dimension(ts, NuPattern(flags, model.p, model.q))] += 1
    return DimensionHistogram(counts, trials, n, model.p, model.q, model.alpha)


@dataclass(frozen=True)
class ConcentrationRow:
    k: float
    regime: str
    empirical: float | None
    bound: float | None
    slack: float | None
    satisfied: bool | None


def check_concentration(
    hist: DimensionHistogram,
    k_grid,
    sigmas: float = 4.0,
    variant: str = "theorem",
) -> list[ConcentrationRow]:
    """Compare empirical tails of ``d_V`` with the exponential lower bounds.

    A row passes when ``empirical >= bound - sigmas * sqrt(b (1 - b) / trials)``;
    ``k`` values where neither bound applies are reported as ``void``.
    """
    rows = []
    for k in k_grid:
        cb = concentration_bounds(hist.n, hist.p, hist.q, hist.alpha, k, variant)
        if cb.regime == "void":
            rows.append(ConcentrationRow(k, "void", None, None, None, None))
            continue
        if cb.regime == "above":
            emp, bound = hist.tail_above(k), cb.p_above
        else:
            emp, bound = hist.tail_below(k), cb.p_below
        slack = sigmas * math.sqrt(bound * (1.0 - bound) / hist.trials)
        rows.append(ConcentrationRow(k, cb.regime, emp, bound, slack, emp >= bound - slack))
    return rows
