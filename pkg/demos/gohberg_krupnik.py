"""
A unimodular symbol whose Toeplitz operator is not a contraction
================================================================

a = sin(pi/p) + i cos(pi/p) sign(theta) has |a| = 1 everywhere, yet T(a) on
H^p has norm at least 1/sin(pi/p).  Finite-degree lower bounds climb towards
that value.
"""

import math

from normlab import degree_sweep, make_symbol, toeplitz

p = 4.0
A = toeplitz(make_symbol("gk", p, "+"), 1)
for e in degree_sweep(A, p, [8, 16, 32, 64, 128], restarts=8):
    print(f"d={e.degree:4d}  lower bound {e.value:.5f}")
print(f"1/sin(pi/p) = {1 / math.sin(math.pi / p):.5f}")
