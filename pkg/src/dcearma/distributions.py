"""Discrete-continuous scalar laws.

A law here is a two-component mixture: with probability ``alpha`` (the
continuity chance) a draw comes from an absolutely continuous component, and
otherwise from a finite list of atoms. Sampling always reports which
component produced each value, because the downstream geometry depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

__all__ = [
    "Gaussian",
    "Uniform",
    "SumContinuous",
    "DceDistribution",
    "sample_excitation",
    "compose_sum_distribution",
    "gaussian",
    "rademacher",
    "bernoulli_gaussian",
]

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class Gaussian:
    mean: float = 0.0
    variance: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.mean) and self.variance > 0 and np.isfinite(self.variance)):
            raise ValueError(f"invalid Gaussian({self.mean}, {self.variance})")

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return rng.normal(self.mean, np.sqrt(self.variance), size=count)

    def spec(self) -> str:
        return f"gaussian:{self.mean!r}:{self.variance!r}"


@dataclass(frozen=True)
class Uniform:
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi) and self.lo < self.hi):
            raise ValueError(f"invalid Uniform({self.lo}, {self.hi})")

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(self.lo, self.hi, size=count)

    def spec(self) -> str:
        return f"uniform:{self.lo!r}:{self.hi!r}"


@dataclass(frozen=True)
class SumContinuous:
    """Continuous part of ``X1 + X2`` for independent DCE laws.

    No closed-form density is kept; drawing conditions on at least one of
    the two summands being a continuous draw.
    """

    first: "DceDistribution"
    second: "DceDistribution"

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        a1, a2 = self.first.alpha, self.second.alpha
        w = np.array([a1 * (1 - a2), (1 - a1) * a2, a1 * a2])
        w = w / w.sum()
        case = rng.choice(3, size=count, p=w)
        nu1 = case != 1
        nu2 = case != 0
        x1 = self.first._draw(nu1, rng)
        x2 = self.second._draw(nu2, rng)
        return x1 + x2

    def spec(self) -> str:
        return "sum"


Continuous = Union[Gaussian, Uniform, SumContinuous]


@dataclass(frozen=True)
class DceDistribution:
    """An ``alpha``-discrete-continuous law with finitely many atoms.

    ``atoms`` is a tuple of ``(value, weight)`` pairs whose weights sum to 1.
    Either side may be left empty when its mixture weight is zero.
    """

    alpha: float
    atoms: tuple[tuple[float, float], ...] = ()
    continuous: Continuous | None = None

    def __post_init__(self):
        atoms = tuple((float(v), float(w)) for v, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if atoms:
            values = np.array([v for v, _ in atoms])
            weights = np.array([w for _, w in atoms])
            if not np.all(np.isfinite(values)):
                raise ValueError("atom values must be finite")
            if np.any(weights < 0) or abs(weights.sum() - 1.0) > _WEIGHT_TOL:
                raise ValueError("atom weights must be nonnegative and sum to 1")
            if len(np.unique(values)) != len(values):
                raise ValueError("atom values must be pairwise distinct")
        if self.alpha < 1 and not atoms:
            raise ValueError("alpha < 1 requires at least one atom")
        if self.alpha > 0 and self.continuous is None:
            raise ValueError("alpha > 0 requires a continuous component")

    @property
    def atom_values(self) -> np.ndarray:
        return np.array([v for v, _ in self.atoms], dtype=float)

    @property
    def atom_weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=float)

    def sample_atoms(self, count: int, rng: np.random.Generator) -> np.ndarray:
        if count == 0:
            return np.zeros(0)
        idx = rng.choice(len(self.atoms), size=count, p=self.atom_weights)
        return self.atom_values[idx]

    def _draw(self, nu: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        out = np.empty(nu.shape, dtype=float)
        k = int(nu.sum())
        if k:
            out[nu] = self.continuous.sample(k, rng)
        if k < nu.size:
            out[~nu] = self.sample_atoms(nu.size - k, rng)
        return out

    def sample(self, count: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        return sample_excitation(self, count, rng)


def sample_excitation(
    dist: DceDistribution, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``count`` i.i.d. values and their continuity flags.

    Returns ``(xi, nu)`` where ``nu[i]`` is 1 exactly when ``xi[i]`` came from
    the continuous component.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if dist.alpha == 1.0:
        nu = np.ones(count, dtype=bool)
    elif dist.alpha == 0.0:
        nu = np.zeros(count, dtype=bool)
    else:
        nu = rng.random(count) < dist.alpha
    xi = dist._draw(nu, rng)
    return xi, nu.astype(np.int8)


def compose_sum_distribution(d1: DceDistribution, d2: DceDistribution) -> DceDistribution:
    """Law of the sum of two independent DCE variables.

    The atomic part is the exact convolution of the two atom lists, carrying
    mass ``(1 - a1)(1 - a2)``; everything else is continuous.
    """
    alpha = 1.0 - (1.0 - d1.alpha) * (1.0 - d2.alpha)
    atoms: tuple[tuple[float, float], ...] = ()
    if alpha < 1.0:
        acc: dict[float, float] = {}
        for v1, w1 in d1.atoms:
            for v2, w2 in d2.atoms:
                key = v1 + v2
                acc[key] = acc.get(key, 0.0) + w1 * w2
        total = sum(acc.values())
        atoms = tuple((v, w / total) for v, w in sorted(acc.items()))
    cont = SumContinuous(d1, d2) if alpha > 0.0 else None
    return DceDistribution(alpha=alpha, atoms=atoms, continuous=cont)


def gaussian(mean: float = 0.0, variance: float = 1.0) -> DceDistribution:
    return DceDistribution(alpha=1.0, continuous=Gaussian(mean, variance))


def rademacher() -> DceDistribution:
    return DceDistribution(alpha=0.0, atoms=((-1.0, 0.5), (1.0, 0.5)))


def bernoulli_gaussian(alpha: float, atom: float = 0.0, variance: float = 1.0) -> DceDistribution:
    atoms = ((atom, 1.0),) if alpha < 1 else ()
    return DceDistribution(alpha=alpha, atoms=atoms, continuous=Gaussian(0.0, variance))
