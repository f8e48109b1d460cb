"""
Reference constants across the exponent range
=============================================

Prints 1/sin(pi/p), 2^|1-2/p| and C_p for a handful of exponents.  C_p sits
between 1 and 2^|1-2/p|, touches 1 only at p = 2, and is unchanged when p is
swapped for its conjugate exponent.
"""

from normlab.constants import reference_constants

print(f"{'p':>6} {'p_conj':>8} {'riesz':>10} {'2^|1-2/p|':>10} {'C_p':>10}")
for p in (1.2, 1.5, 2, 3, 4, 8):
    r = reference_constants(p)
    print(f"{r.p:6.2f} {r.p_conj:8.3f} {r.riesz:10.6f} {r.two_power:10.6f} {r.c_p:10.6f}")

# conjugate pairs give the same C_p
for p in (1.2, 1.5, 4):
    a, b = reference_constants(p).c_p, reference_constants(p / (p - 1)).c_p
    print(f"C_{p} - C_{p / (p - 1):.4g} = {a - b:.1e}")
