"""Linear compression of a DCE-ARMA block.

A decoder that knows the affine piece recovers X^n exactly once the number
of Gaussian measurements reaches the piece's dimension, about alpha*n + p.
With purely atomic excitation p + 2 measurements already suffice.
"""

from dcearma import rademacher, stream
from dcearma.arma import ArmaModel
from dcearma.compress import rate_curve, transition_midpoint
from dcearma.figures import ARMA11_HALF as model

rates = [round(0.30 + 0.05 * i, 2) for i in range(11)]
res = rate_curve(model, 80, rates, 300, stream(10))
for r in res:
    bar = "#" * round(40 * r.success_fraction)
    print(f"R={r.config.rate:.2f} m={r.measurement_count:2d} {r.success_fraction:5.3f} {bar}")
print(f"success crosses 1/2 at R = {transition_midpoint(res):.3f} (alpha + p/n = {0.5 + 1 / 80:.3f})")

search = rate_curve(model, 80, [0.7], 100, stream(11), decoder_mode="search", search_k=16)[0]
print(f"pattern search over 16 candidates at R=0.7: {search.success_fraction:.2f}")

atomic = ArmaModel(model.phi, model.theta, rademacher())
(r,) = rate_curve(atomic, 80, [3 / 80], 300, stream(12))
print(f"Rademacher excitation, {r.measurement_count} measurements: success {r.success_fraction:.2f}")
