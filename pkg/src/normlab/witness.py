"""
Finite-covering witness for the backward shift T(e_{-1}).

Given a near-extremal q (||q||_p = 1, ||T(e_{-1}) q||_p close to the norm)
and finitely many analytic polynomials phi_j, the function q o e_N with
N > max deg phi_j + 1 lies in the unit ball, and its image under T(e_{-1})
stays at distance >= ||q_0||_p from every phi_j.  The distance bound is
certified by the dual element h = J_p(q_0 o e_N), whose Fourier support sits
on multiples of N and therefore annihilates e_1 phi_j.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .operators import make_symbol, toeplitz_apply
from .trig import (
    GridConfig,
    TrigPoly,
    compose_eN,
    duality_map,
    grid_for,
    lp_norm,
    monomial,
    pair,
)

__all__ = ["WitnessReport", "CertificateReport", "build_witness", "verify_certificate", "witness_grid"]

E_MINUS_1 = make_symbol("e", -1)


@dataclass
class CertificateReport:
    ok: bool
    dual_norm: float
    pairing: complex
    f0_norm: float
    off_support_mass: float
    candidate_pairings: list
    failing: str | None = None
    failing_index: int | None = None


@dataclass
class WitnessReport:
    p: float
    epsilon: float
    q: TrigPoly
    q0: TrigPoly
    N: int
    witness: TrigPoly
    candidates: list
    distances: list
    certificate_ok: bool
    floor: float
    estimate_value: float
    certificate: CertificateReport | None = field(default=None, repr=False)

    def distances_ok(self, atol: float = 1e-8) -> bool:
        return all(d >= self.floor - atol for d in self.distances)


def witness_grid(N: int, degree: int, p: float) -> GridConfig:
    """Grid with size a multiple of N and >= 8 (N deg + 1) max(2, ceil p)."""
    return grid_for(2 * N * degree + 1, p, multiple_of=N)


def _degree(phi: TrigPoly) -> int:
    return 0 if phi.is_zero() else phi.k_max


def verify_certificate(f0: TrigPoly, p: float, candidates, N: int, g: GridConfig | None = None) -> CertificateReport:
    """Check the dual certificate for f0 = q0 o e_N against ``candidates``.

    (i)   h = J_p(f0) has ||h||_{p'} = 1 and pair(f0, h) = ||f0||_p;
    (ii)  the discrete spectrum of h lives on multiples of N;
    (iii) pair(e_1 phi_j, h) = 0, so pair(f0 - e_1 phi_j, h) = ||f0||_p and,
          by Hoelder, ||f0 - e_1 phi_j||_p >= ||f0||_p.
    """
    if f0.is_zero():
        raise ValueError("f0 must be nonzero")
    if g is None:
        deg = max(math.ceil(_degree(f0) / N), max((_degree(c) for c in candidates), default=0))
        g = witness_grid(N, max(deg, 1), p)
    q = p / (p - 1)
    h = duality_map(f0, p, g)
    nf = lp_norm(f0, p, g)
    dual_norm = lp_norm(h, q, g)
    pr = pair(f0, h, g)

    spec = np.fft.fft(h)
    k = np.fft.fftfreq(g.size, 1 / g.size).astype(int)
    on = k % N == 0
    total = float(np.sum(np.abs(spec) ** 2))
    off = float(np.sum(np.abs(spec[~on]) ** 2) / total) if total else 0.0

    e1 = monomial(1)
    cps = [pair(e1 * c, h, g) for c in candidates]
    rep = CertificateReport(True, dual_norm, pr, nf, off, cps)
    if abs(dual_norm - 1) > 1e-8 or abs(pr - nf) > 1e-8:
        rep.ok, rep.failing = False, "dual-normalization"
    elif off > 1e-6:
        rep.ok, rep.failing = False, "lacunarity"
    else:
        for j, (c, v) in enumerate(zip(candidates, cps)):
            if abs(v) > 1e-8 or abs(pair(f0 - e1 * c, h, g) - nf) > 1e-7:
                rep.ok, rep.failing, rep.failing_index = False, "annihilation", j
                break
    return rep


def build_witness(p: float, epsilon: float, candidates, est) -> WitnessReport:
    """Unit-ball element whose backward-shift image avoids every candidate ball.

    ``est`` is a NormEstimate for T(e_{-1}) at exponent p; its maximizer is
    the near-extremal q.  Candidates must be analytic polynomials.
    """
    candidates = list(candidates)
    for c in candidates:
        if not c.is_analytic():
            raise ValueError("candidates must be analytic polynomials")
    if est.value < 1:
        warnings.warn(f"estimate {est.value} < 1 gives a weak distance floor")
    q = est.maximizer
    q0 = q - monomial(0, q[0])
    N = max((_degree(c) for c in candidates), default=0) + 2
    w = compose_eN(q, N)
    f0 = compose_eN(q0, N)
    deg = max(_degree(q), max((_degree(c) for c in candidates), default=0))
    g = witness_grid(N, max(deg, 1), p)
    image = toeplitz_apply(E_MINUS_1, w)
    distances = [lp_norm(image - c, p, g) for c in candidates]
    floor = est.value - 2 * epsilon
    cert = verify_certificate(f0, p, candidates, N, g) if not f0.is_zero() else None
    return WitnessReport(
        p=p,
        epsilon=epsilon,
        q=q,
        q0=q0,
        N=N,
        witness=w,
        candidates=candidates,
        distances=distances,
        certificate_ok=bool(cert is not None and cert.ok),
        floor=floor,
        estimate_value=est.value,
        certificate=cert,
    )
