"""Why a Bernoulli-Gaussian AR(1) path is singular.

X_t = X_{t-1}/3 + xi_t. Whenever xi_t is the atom 0, the pair (X_{t-1}, X_t)
lands exactly on the line X_t = X_{t-1}/3, a set of zero area that still
carries about half of the probability. With Rademacher excitation every
pair is on one of two lines and the marginal becomes a Cantor law.
"""

import numpy as np

from dcearma import stream
from dcearma.affine import NuPattern, build_component
from dcearma.arma import build_toeplitz
from dcearma.cantor import cantor_cdf, joint_scatter, sample_bernoulli_convolution
from dcearma.figures import AR1_RADEMACHER, AR1_THIRD

rows = np.array(joint_scatter(AR1_THIRD, 1, 5000, stream(1)))
on_line = rows[rows[:, 2] == 1]
gap = np.abs(on_line[:, 1] - on_line[:, 0] / 3)
print(f"{len(on_line)} of {len(rows)} consecutive pairs were driven by the atom")
print(f"largest |X_t - X_(t-1)/3| among them: {gap.max():.1e}")

# the same line as an affine component of the block law
ts = build_toeplitz(AR1_THIRD, 2)
comp = build_component(AR1_THIRD, ts, NuPattern([0], 1, 0), [0.0])
print(f"component for a pinned xi_2: dimension {comp.dim}, direction {comp.basis[:, 0].round(4)}")

# Rademacher excitation: X_t = sum 3^-k s_k, the scaled Cantor law
x = np.sort(sample_bernoulli_convolution(1 / 3, 25, 100_000, stream(2)))
i = np.arange(1, x.size + 1)
f = cantor_cdf(x)
print(f"sup |ECDF - Cantor| = {max(np.max(i / x.size - f), np.max(f - (i - 1) / x.size)):.4f}")
print(f"Rademacher AR(1) pole modulus: {abs(AR1_RADEMACHER.poles()[0]):.4f}")
