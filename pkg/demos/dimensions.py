"""Information dimension of the excitation and of ARMA blocks.

The slope of H([X]_m) against log2 m recovers the continuity chance of a
scalar law. For a block of an ARMA process the dimension per sample is
squeezed between two bounds that both tend to alpha; the genie estimate
averages the dimension of the affine piece each continuity pattern selects.
"""

from dcearma import bernoulli_gaussian, gaussian, rademacher, stream
from dcearma.dimension import bid_bounds, estimate_bid_oracle, estimate_idr, estimate_rid
from dcearma.figures import AR2_HALF

grid = [2**k for k in range(4, 13)]
for name, law in [("gaussian", gaussian()), ("bern-gauss 0.5", bernoulli_gaussian(0.5)), ("rademacher", rademacher())]:
    est = estimate_rid(law, grid, 200_000, stream(3))
    print(f"RID slope {name:15s} {est.slope:.3f} +- {est.stderr:.3f}")

# with q = 0 the expected genie value equals the upper bound; 1000 trials
# leave Monte Carlo noise of about 0.01 on top
print("\n   m  lower  upper  genie")
for m in (2, 10, 50, 200):
    lo, hi = bid_bounds(m, AR2_HALF.p, AR2_HALF.q, AR2_HALF.alpha)
    est = estimate_bid_oracle(AR2_HALF, m + AR2_HALF.p, 1000, stream(4, m))
    print(f"{m:4d}  {lo:.3f}  {hi:.3f}  {est:.3f}")

# finite-scale probe of the entropy rate; the limit itself is out of reach,
# and at m = 16 the spread of X still adds bits, so values sit above 1
for n, val in estimate_idr(AR2_HALF, 16, [1, 2], 200_000, stream(5)):
    print(f"H([X^{n}]_16) / ({n} log2 16) = {val:.3f}")
