"""
Riesz projection on band-limited inputs
=======================================

The norm of P on L^p is 1/sin(pi/p), but the extremal functions are singular,
so on polynomials of degree d the attainable ratio approaches it slowly.
This prints the ratio as a fraction of the limit for growing d.
"""

import math

from normlab import degree_sweep, riesz

for p in (1.5, 4.0):
    limit = 1 / math.sin(math.pi / p)
    ests = degree_sweep(riesz(1), p, [8, 16, 32, 64], restarts=4)
    for e in ests:
        print(f"p={p} d={e.degree:3d}  ratio {e.value:.5f}  fraction of limit {e.value / limit:.4f}")
