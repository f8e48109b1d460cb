"""
Backward shift: lower bounds above one away from p = 2
======================================================

On H^2 the backward shift is a partial isometry, so its norm is exactly 1.
For p != 2 the best ratio ||T f||_p / ||f||_p over polynomials of degree d
creeps above 1 as d grows and stays under 2^|1-2/p|.
"""

import numpy as np

from normlab import degree_sweep, make_symbol, toeplitz, lp_norm, apply

shift = toeplitz(make_symbol("e", -1), 1)

for p in (2.0, 4.0, 1.5):
    ests = degree_sweep(shift, p, [4, 8, 16, 32], restarts=8)
    line = "  ".join(f"d={e.degree}: {e.value:.6f}" for e in ests)
    print(f"p={p}: {line}  (upper {ests[-1].upper_bound:.4f})")

# the reported value is a ratio actually attained by the stored maximizer
best = ests[-1]
f = best.maximizer
print("check:", lp_norm(apply(shift.with_degree(best.degree), f), best.p) / lp_norm(f, best.p))
print("largest coefficients:", np.round(np.abs(f.coeffs[:6]), 4))
