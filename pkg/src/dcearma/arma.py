"""ARMA models driven by discrete-continuous excitation.

Sign convention (easy to get wrong): the recursion is

    X_t = xi_t + sum_i theta_i xi_{t-i} - sum_i phi_i X_{t-i}

so the AR part enters with a *minus* sign. The process
``X_t = X_{t-1}/3 + xi_t`` is therefore ``phi = (-1/3,)``.

Index conventions follow the block identity ``Phi @ X[1..n] = Theta @
xi[p-q+1..n]``: a block of length ``n`` needs the excitation window that
starts at time ``p - q + 1`` (possibly non-positive) and has ``n + q - p``
entries.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, signal

from .distributions import DceDistribution, sample_excitation
from .errors import (
    BlockTooShort,
    BurnInOverflow,
    DimensionMismatch,
    NonFiniteCoefficient,
    UnstableModel,
)

__all__ = [
    "ArmaModel",
    "StationarityReport",
    "SamplePath",
    "ToeplitzSet",
    "validate_model",
    "impulse_response",
    "default_burn_in",
    "simulate_path",
    "build_toeplitz",
    "reconstruct_from_boundary",
    "random_roots",
    "separated_roots",
    "random_stable_model",
]

STABILITY_MARGIN = 1e-9
BURN_IN_TIME_CONSTANTS = 60
MAX_BURN_IN = 100_000
OVERFLOW_LIMIT = 1e300


@dataclass(frozen=True)
class ArmaModel:
    """A causal (p, q) ARMA model plus its excitation law."""

    phi: tuple[float, ...]
    theta: tuple[float, ...]
    excitation: DceDistribution

    def __post_init__(self):
        phi = tuple(float(c) for c in self.phi)
        theta = tuple(float(c) for c in self.theta)
        if not all(math.isfinite(c) for c in phi + theta):
            raise NonFiniteCoefficient(f"non-finite coefficient in phi={phi}, theta={theta}")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "theta", theta)

    @property
    def p(self) -> int:
        return len(self.phi)

    @property
    def q(self) -> int:
        return len(self.theta)

    @property
    def alpha(self) -> float:
        return self.excitation.alpha

    @property
    def ar_poly(self) -> np.ndarray:
        """``[1, phi_1, ..., phi_p]``; also the denominator in powers of 1/z."""
        return np.r_[1.0, self.phi]

    @property
    def ma_poly(self) -> np.ndarray:
        return np.r_[1.0, self.theta]

    def poles(self) -> np.ndarray:
        if self.p == 0:
            return np.zeros(0, dtype=complex)
        return np.roots(self.ar_poly).astype(complex)

    def spectral_radius(self) -> float:
        poles = self.poles()
        return float(np.max(np.abs(poles))) if poles.size else 0.0


@dataclass(frozen=True)
class StationarityReport:
    stable: bool
    pole_moduli: tuple[float, ...]


def validate_model(model: ArmaModel) -> StationarityReport:
    """Check strict causal stability: every AR pole has modulus < 1 - 1e-9."""
    coeffs = np.r_[model.phi, model.theta]
    if not np.all(np.isfinite(coeffs)):
        raise NonFiniteCoefficient("phi/theta must be finite")
    moduli = tuple(sorted((float(m) for m in np.abs(model.poles())), reverse=True))
    stable = all(m < 1.0 - STABILITY_MARGIN for m in moduli)
    return StationarityReport(stable=stable, pole_moduli=moduli)


def _require_stable(model: ArmaModel) -> None:
    rep = validate_model(model)
    if not rep.stable:
        raise UnstableModel(f"AR pole moduli {rep.pole_moduli} not inside the unit circle")


def impulse_response(model: ArmaModel, N: int) -> np.ndarray:
    """Return ``h[0..N]``, the causal impulse response of ``theta(z)/phi(z)``.

    Computed by ``h[n] = theta_n 1{n<=q} - sum_{i<=min(n,p)} phi_i h[n-i]``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    _require_stable(model)
    h = np.zeros(N + 1)
    phi, theta = model.phi, model.theta
    for n in range(N + 1):
        acc = 1.0 if n == 0 else (theta[n - 1] if n <= model.q else 0.0)
        for i in range(1, min(n, model.p) + 1):
            acc -= phi[i - 1] * h[n - i]
        h[n] = acc
    return h


def default_burn_in(model: ArmaModel) -> int:
    """Sixty time constants of the slowest pole, capped at 1e5 (0 for pure MA)."""
    if model.p == 0:
        return 0
    rho = model.spectral_radius()
    if rho == 0.0:
        return model.p
    return int(min(math.ceil(BURN_IN_TIME_CONSTANTS / abs(math.log(rho))), MAX_BURN_IN))


@dataclass(frozen=True)
class SamplePath:
    """A realized block ``X_1..X_n`` with its hidden excitation window.

    ``xi[j]`` and ``nu[j]`` belong to time ``xi_start + j`` where
    ``xi_start = p - q + 1``.
    """

    n: int
    p: int
    q: int
    x: np.ndarray
    xi: np.ndarray
    nu: np.ndarray
    burn_in: int

    @property
    def xi_start(self) -> int:
        return self.p - self.q + 1

    @property
    def boundary(self) -> np.ndarray:
        return self.x[: self.p]

    def xi_at(self, t: int) -> float:
        return float(self.xi[t - self.xi_start])

    def nu_at(self, t: int) -> int:
        return int(self.nu[t - self.xi_start])


def simulate_path(
    model: ArmaModel,
    n: int,
    rng: np.random.Generator,
    burn_in: int | None = None,
) -> SamplePath:
    """Run the recursion from a zero state and keep the last ``n`` samples.

    Excitation is drawn for ``burn_in + q`` extra steps in front of the
    retained block so the excitation window is always available.
    """
    if n < 1:
        raise ValueError("n must be positive")
    _require_stable(model)
    if burn_in is None:
        burn_in = default_burn_in(model)
    if burn_in < 0:
        raise ValueError("burn_in must be nonnegative")
    p, q = model.p, model.q
    total = burn_in + q + n
    xi_full, nu_full = sample_excitation(model.excitation, total, rng)
    x_full = signal.lfilter(model.ma_poly, model.ar_poly, xi_full)
    if not np.all(np.isfinite(x_full)) or np.max(np.abs(x_full), initial=0.0) > OVERFLOW_LIMIT:
        raise BurnInOverflow("path magnitude exceeded 1e300")
    # time t sits at array index t + burn_in + q - 1
    w0 = p + burn_in
    return SamplePath(
        n=n,
        p=p,
        q=q,
        x=x_full[total - n :].copy(),
        xi=xi_full[w0:].copy(),
        nu=nu_full[w0:].copy(),
        burn_in=burn_in,
    )


@dataclass(frozen=True)
class ToeplitzSet:
    n: int
    p: int
    q: int
    phi_mat: np.ndarray
    theta_mat: np.ndarray
    phi_hat: np.ndarray
    theta_hat: np.ndarray

    def propagator(self) -> np.ndarray:
        """``inv(phi_hat) @ theta_hat`` (n x (n+q)), mapping boundary+window to X."""
        return linalg.solve_triangular(
            self.phi_hat, self.theta_hat, lower=True, unit_diagonal=True
        )


def _banded(rows: int, cols: int, band: np.ndarray) -> np.ndarray:
    m = np.zeros((rows, cols))
    w = band.size
    for r in range(rows):
        m[r, r : r + w] = band
    return m


def build_toeplitz(model: ArmaModel, n: int) -> ToeplitzSet:
    """Banded matrices with ``phi_mat @ X^n == theta_mat @ xi[p-q+1..n]``."""
    p, q = model.p, model.q
    if n < p + 1:
        raise BlockTooShort(f"need n >= p + 1 = {p + 1}, got {n}")
    phi_mat = _banded(n - p, n, model.ar_poly[::-1])
    theta_mat = _banded(n - p, n + q - p, model.ma_poly[::-1])
    phi_hat = np.zeros((n, n))
    phi_hat[:p, :p] = np.eye(p)
    phi_hat[p:, :] = phi_mat
    theta_hat = np.zeros((n, n + q))
    theta_hat[:p, :p] = np.eye(p)
    theta_hat[p:, p:] = theta_mat
    return ToeplitzSet(n, p, q, phi_mat, theta_mat, phi_hat, theta_hat)


def reconstruct_from_boundary(
    ts: ToeplitzSet, x_boundary: np.ndarray, xi_window: np.ndarray
) -> np.ndarray:
    """Rebuild ``X^n`` from its first ``p`` values and the excitation window."""
    x_boundary = np.asarray(x_boundary, dtype=float).ravel()
    xi_window = np.asarray(xi_window, dtype=float).ravel()
    if x_boundary.size != ts.p or xi_window.size != ts.n + ts.q - ts.p:
        raise DimensionMismatch(
            f"expected boundary {ts.p} and window {ts.n + ts.q - ts.p}, "
            f"got {x_boundary.size} and {xi_window.size}"
        )
    rhs = ts.theta_hat @ np.r_[x_boundary, xi_window]
    return linalg.solve_triangular(ts.phi_hat, rhs, lower=True, unit_diagonal=True)


def random_roots(count: int, rng: np.random.Generator, lo: float = 0.3, hi: float = 0.9) -> list:
    """``count`` roots with moduli uniform in ``[lo, hi]``, complex ones paired."""
    roots: list = []
    while len(roots) + 2 <= count:
        r = rng.uniform(lo, hi)
        w = rng.uniform(0.0, np.pi)
        roots += [r * np.exp(1j * w), r * np.exp(-1j * w)]
    if len(roots) < count:
        roots.append(complex(rng.uniform(lo, hi) * rng.choice([-1.0, 1.0])))
    return roots


def separated_roots(
    n_poles: int,
    n_zeros: int,
    rng: np.random.Generator,
    lo: float = 0.3,
    hi: float = 0.9,
    sep: float = 0.1,
) -> tuple[list, list]:
    """Random poles and zeros, redrawn until no pole is within ``sep`` of another root.

    Near-coincident roots give models that are numerically of lower order,
    which makes 1e-8 rank decisions flip on rounding.
    """
    while True:
        poles = random_roots(n_poles, rng, lo, hi)
        zeros = random_roots(n_zeros, rng, lo, hi)
        if all(abs(z - a) > sep for z in zeros for a in poles) and all(
            abs(a - b) > sep for a, b in itertools.combinations(poles, 2)
        ):
            return poles, zeros


def random_stable_model(
    p: int, q: int, excitation: DceDistribution, rng: np.random.Generator, sep: float = 0.1
) -> ArmaModel:
    """Causal ARMA model with random AR poles and MA zeros (see ``separated_roots``)."""
    poles, zeros = separated_roots(p, q, rng, sep=sep)
    phi = np.real(np.poly(poles)[1:]) if p else ()
    theta = np.real(np.poly(zeros)[1:]) if q else ()
    return ArmaModel(tuple(phi), tuple(theta), excitation)
