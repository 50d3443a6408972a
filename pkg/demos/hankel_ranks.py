"""Rank facts about Hankel matrices of impulse responses.

A filter with p nonzero poles has a nonsingular p x p Hankel matrix, and
shifting the window far enough past the origin poles keeps it full rank.
"""

from dcearma import stream
from dcearma.figures import ARMA23_SIXTY
from dcearma.arma import build_toeplitz
from dcearma.hankel import (
    RationalFilter,
    check_hankel_nonsingular,
    exact_column_rank_distribution,
    random_column_rank_distribution,
    shifted_hankel_full_rank,
    shifted_hankel_threshold,
)

filt = RationalFilter.from_arma(ARMA23_SIXTY)
c = check_hankel_nonsingular(filt)
print(f"{filt.p} nonzero poles, {filt.zero_pole_count} at the origin; det H = {c.det_estimate:.4f}")
th = shifted_hankel_threshold(filt)
for i in (th, th + 1, th + 3):
    s = shifted_hankel_full_rank(filt, i)
    print(f"shift i={i}: rank {s.rank}/{s.size}, sigma ratio {s.cond_ratio:.2e}")

theta = build_toeplitz(ARMA23_SIXTY, 6).theta_mat
exact = exact_column_rank_distribution(theta, 0.6)
mc = random_column_rank_distribution(theta, 0.6, 100_000, stream(9))
print("\nrank of random column subsets of a 4x7 Theta (alpha=0.6)")
for r, (e, m) in enumerate(zip(exact, mc.probabilities)):
    print(f"  rank {r}: exact {e:.4f}  monte carlo {m:.4f}")
