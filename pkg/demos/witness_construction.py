"""
A point of the unit ball the candidates cannot reach
====================================================

Take a near-extremal q for the backward shift at p = 4 and a few random
analytic polynomials phi_j.  Dilating q by z -> z^N with N beyond their
degrees gives a unit vector whose shifted image is at distance at least
||q - q(0)||_p from every phi_j; a dual element supported on multiples of N
certifies it.
"""

import numpy as np

from normlab import TrigPoly, build_witness, estimate_norm, make_symbol, toeplitz

est = estimate_norm(toeplitz(make_symbol("e", -1), 16), 4)
rng = np.random.default_rng(7)
cands = [TrigPoly(rng.standard_normal(9) + 1j * rng.standard_normal(9), 0) for _ in range(3)]

rep = build_witness(4, 0.01, cands, est)
print(f"estimate {est.value:.6f}, N = {rep.N}, floor {rep.floor:.6f}")
for j, d in enumerate(rep.distances):
    print(f"  candidate {j}: distance {d:.6f}")
c = rep.certificate
print(f"certificate ok: {rep.certificate_ok}")
print(f"  dual norm {c.dual_norm:.12f}, off-lattice mass {c.off_support_mass:.1e}")
print(f"  max |<e_1 phi_j, h>| = {max(abs(v) for v in c.candidate_pairings):.1e}")
