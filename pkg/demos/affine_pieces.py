"""The law of an ARMA block is a mixture of affine pieces.

Each continuity pattern nu picks a piece of dimension p + rank(Theta[:, nu]).
The dimensions concentrate around alpha * n, and the exponential tail bounds
say how fast.
"""

import numpy as np

from dcearma import stream
from dcearma.affine import check_concentration, component_for_path, empirical_dimension_histogram, verify_membership
from dcearma.arma import simulate_path
from dcearma.dimension import min_n_for_concentration
from dcearma.figures import ARMA23_SIXTY as model

path = simulate_path(model, 30, stream(6))
comp = component_for_path(model, path)
print(f"path with {path.nu.sum()} continuous draws of {path.nu.size}: piece of dimension {comp.dim}")
print(f"distance from its piece: {verify_membership(path, comp):.1e}")

hist = empirical_dimension_histogram(model, 100, 10_000, stream(7))
print(f"\nn=100: mean d_V/n = {hist.mean_normalized:.3f}, mode {int(np.argmax(hist.counts))}")
print(f"Pr(|d_V/n - 0.6| < 0.1) = {hist.band_probability(0.1):.3f}")
for row in check_concentration(hist, [40, 45, 50, 75, 80, 85]):
    print(f"  k={row.k:3d} {row.regime:5s} empirical {row.empirical:.4f} >= bound {row.bound:.4f}")

n = min_n_for_concentration(model.p, model.q, model.alpha, eps=0.2, delta=0.1)
big = empirical_dimension_histogram(model, n, 2000, stream(8))
print(f"\nguaranteed block length n={n}: Pr(band) = {big.band_probability(0.1):.4f} (promised >= 0.8)")
