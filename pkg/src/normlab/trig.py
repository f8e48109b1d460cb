"""
Trigonometric polynomials on the unit circle.

Functions are stored by their Fourier coefficients f^(k) over a contiguous
index range.  Grid samples live on the uniform grid

    theta_j = -pi + 2*pi*j/M,   j = 0, ..., M-1

and every L^p norm or pairing carries the 1/(2*pi) normalization, so that
``lp_norm(e_k, p) == 1`` for every monomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np
from scipy import fft as sfft

__all__ = [
    "SizingError",
    "UnsupportedExponentError",
    "DegenerateInputError",
    "DomainError",
    "TrigPoly",
    "GridConfig",
    "PNorm",
    "monomial",
    "grid_for",
    "transform",
    "inverse",
    "lp_norm",
    "pair",
    "duality_map",
    "compose_eN",
    "compress",
    "P_MIN",
    "P_MAX",
]

# Exponents accepted by the estimation layer; quadrature of |f|^(p-2) degrades outside.
P_MIN = 1.05
P_MAX = 50.0


class SizingError(ValueError):
    """Grid too small for the band it has to represent."""


class UnsupportedExponentError(ValueError):
    """Exponent outside the open interval (1, inf)."""


class DegenerateInputError(ValueError):
    """Zero function where a nonzero one is required."""


class DomainError(ValueError):
    """Input outside an operator's domain."""


class TrigPoly:
    """Finitely supported two-sided Fourier coefficient sequence.

    Parameters
    ----------
    coeffs : array_like
        Coefficients for indices ``offset, offset+1, ...``.
    offset : int
        Index of ``coeffs[0]``.

    The stored range is trimmed to its nonzero endpoints; the zero
    polynomial has an empty coefficient array.
    """

    __slots__ = ("coeffs", "offset")

    def __init__(self, coeffs, offset: int = 0):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        nz = np.flatnonzero(c)
        if nz.size == 0:
            self.coeffs = np.zeros(0, dtype=complex)
            self.offset = 0
        else:
            self.coeffs = c[nz[0] : nz[-1] + 1]
            self.offset = int(offset) + int(nz[0])
        self.coeffs.setflags(write=False)

    @classmethod
    def from_dict(cls, d: dict) -> "TrigPoly":
        if not d:
            return cls([])
        lo, hi = min(d), max(d)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in d.items():
            c[k - lo] += v
        return cls(c, lo)

    @property
    def k_min(self) -> int:
        return self.offset

    @property
    def k_max(self) -> int:
        return self.offset + len(self.coeffs) - 1

    @property
    def band(self) -> int:
        """Largest |k| carrying a nonzero coefficient (0 for the zero polynomial)."""
        if self.is_zero():
            return 0
        return max(abs(self.k_min), abs(self.k_max))

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def is_analytic(self) -> bool:
        return self.is_zero() or self.k_min >= 0

    def __getitem__(self, k: int) -> complex:
        i = k - self.offset
        if self.is_zero() or i < 0 or i >= len(self.coeffs):
            return 0j
        return complex(self.coeffs[i])

    def to_dict(self) -> dict:
        return {self.offset + i: complex(c) for i, c in enumerate(self.coeffs) if c != 0}

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients for indices lo..hi inclusive; raises if f has support outside."""
        if not self.is_zero() and (self.k_min < lo or self.k_max > hi):
            raise DomainError(
                f"support [{self.k_min}, {self.k_max}] not inside [{lo}, {hi}]"
            )
        out = np.zeros(hi - lo + 1, dtype=complex)
        if not self.is_zero():
            out[self.k_min - lo : self.k_max - lo + 1] = self.coeffs
        return out

    def _binary(self, other, sign):
        if not isinstance(other, TrigPoly):
            other = TrigPoly([other])
        if self.is_zero():
            return TrigPoly(sign * other.coeffs, other.offset)
        if other.is_zero():
            return self
        lo = min(self.k_min, other.k_min)
        hi = max(self.k_max, other.k_max)
        return TrigPoly(self.dense(lo, hi) + sign * other.dense(lo, hi), lo)

    def __add__(self, other):
        return self._binary(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TrigPoly(-self.coeffs, self.offset)

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            if self.is_zero() or other.is_zero():
                return TrigPoly([])
            return TrigPoly(np.convolve(self.coeffs, other.coeffs), self.offset + other.offset)
        return TrigPoly(self.coeffs * complex(other), self.offset)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return TrigPoly(self.coeffs / complex(scalar), self.offset)

    def conj(self) -> "TrigPoly":
        """Pointwise complex conjugate on the circle: c_k -> conj(c_{-k})."""
        if self.is_zero():
            return self
        return TrigPoly(np.conj(self.coeffs[::-1]), -self.k_max)

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.offset == other.offset and np.array_equal(self.coeffs, other.coeffs)

    def allclose(self, other: "TrigPoly", atol: float = 1e-12) -> bool:
        lo = min(self.k_min, other.k_min)
        hi = max(self.k_max, other.k_max)
        return bool(np.allclose(self.dense(lo, hi), other.dense(lo, hi), rtol=0, atol=atol))

    def __call__(self, theta):
        """Evaluate at e^{i theta} by direct summation."""
        theta = np.asarray(theta, dtype=float)
        k = np.arange(self.k_min, self.k_max + 1)
        if self.is_zero():
            return np.zeros_like(theta, dtype=complex)
        return np.exp(1j * np.multiply.outer(theta, k)) @ self.coeffs

    def __repr__(self):
        return f"TrigPoly({self.to_dict()!r})"


def monomial(m: int, c: complex = 1.0) -> TrigPoly:
    """The function c * e^{i m theta}."""
    return TrigPoly([c], m)


@dataclass(frozen=True)
class GridConfig:
    """Uniform grid of ``size`` samples on [-pi, pi)."""

    size: int
    oversample: float = 1.0

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 1:
            raise SizingError(f"grid size must be a positive integer, got {self.size}")
        if self.oversample <= 0:
            raise SizingError("oversample must be positive")

    @property
    def theta(self) -> np.ndarray:
        return -np.pi + 2 * np.pi * np.arange(self.size) / self.size

    @property
    def nyquist(self) -> int:
        """Largest |k| representable without aliasing."""
        return (self.size - 1) // 2


@dataclass(frozen=True)
class PNorm:
    p: float

    def __post_init__(self):
        if not (1 < self.p < math.inf):
            raise UnsupportedExponentError(f"p must lie in (1, inf), got {self.p}")

    @property
    def conjugate(self) -> float:
        return self.p / (self.p - 1)


def _as_p(p) -> float:
    return PNorm(float(p.p if isinstance(p, PNorm) else p)).p


def grid_for(band: int, p: float = 2.0, multiple_of: int = 1) -> GridConfig:
    """Smallest FFT-friendly grid satisfying the oversampling policy.

    ``size >= 4 * (band + 1) * max(2, ceil(p))``, rounded up to a 5-smooth
    length that is a multiple of ``multiple_of``.
    """
    need = 4 * (int(band) + 1) * max(2, math.ceil(p))
    m = int(multiple_of)
    size = sfft.next_fast_len(need)
    while size % m:
        size = sfft.next_fast_len(size + 1)
    return GridConfig(size, size / (2 * band + 1))


def _phase(k: np.ndarray) -> np.ndarray:
    # e^{-i k pi}; the grid starts at theta = -pi.
    return np.where(np.asarray(k) % 2 == 0, 1.0, -1.0)


def transform(f: TrigPoly, g: GridConfig) -> np.ndarray:
    """Samples f(e^{i theta_j}) on the grid."""
    if f.band > g.nyquist:
        raise SizingError(f"grid of size {g.size} cannot represent band {f.band}")
    buf = np.zeros(g.size, dtype=complex)
    if f.is_zero():
        return buf
    k = np.arange(f.k_min, f.k_max + 1)
    buf[k % g.size] = f.coeffs * _phase(k)
    return sfft.ifft(buf, norm="forward")


def inverse(samples, band, g: GridConfig | None = None) -> TrigPoly:
    """Fourier coefficients of grid samples on the index range ``band``.

    ``band`` is either an int K (meaning -K..K) or a pair (lo, hi).
    """
    samples = np.asarray(samples, dtype=complex)
    size = samples.shape[-1]
    if g is not None and g.size != size:
        raise SizingError(f"samples have length {size}, grid has size {g.size}")
    lo, hi = (-band, band) if isinstance(band, Integral) else (int(band[0]), int(band[1]))
    if hi - lo + 1 > size:
        raise SizingError(f"band [{lo}, {hi}] exceeds the {size} available frequencies")
    k = np.arange(lo, hi + 1)
    c = sfft.fft(samples, norm="forward")[k % size] * _phase(k)
    return TrigPoly(c, lo)


def _samples(f, g: GridConfig | None, p: float) -> np.ndarray:
    if isinstance(f, TrigPoly):
        return transform(f, g if g is not None else grid_for(f.band, p))
    f = np.asarray(f, dtype=complex)
    if g is not None and f.shape[-1] != g.size:
        raise SizingError(f"samples have length {f.shape[-1]}, grid has size {g.size}")
    return f


def _mean_power(y: np.ndarray, p: float) -> tuple[float, float]:
    a = np.abs(y)
    scale = a.max(initial=0.0)
    if scale == 0:
        return 0.0, 0.0
    return scale, float(np.mean((a / scale) ** p))


def _norm_from(scale: float, m: float, p: float) -> float:
    return float(scale * m ** (1 / p)) if scale else 0.0


def compress(f: TrigPoly) -> tuple[TrigPoly, int]:
    """Write f = F o e_s with s the gcd of the support; returns (F, s)."""
    if f.is_zero():
        return f, 1
    idx = np.flatnonzero(f.coeffs) + f.offset
    s = int(np.gcd.reduce(np.abs(idx))) if np.any(idx) else 1
    if s <= 1:
        return f, 1
    return TrigPoly.from_dict({int(k) // s: f[int(k)] for k in idx}), s


def lp_norm(f, p, g: GridConfig | None = None, rtol: float = 1e-13, max_size: int = 2**20) -> float:
    """Normalized L^p norm ((1/2pi) int |f|^p)^(1/p) by the trapezoid rule.

    ``f`` is a TrigPoly or an array of grid samples.  With an explicit grid
    the trapezoid sum on that grid is returned.  Without one, a TrigPoly is
    first written as F o e_s (s = gcd of its support, an exact isometry) and
    F is sampled on ``grid_for(F.band, p)``; the grid is then doubled until
    the relative change drops below ``rtol`` or ``max_size`` is reached.
    Zeros of f on or near the circle make |f|^p nonsmooth for non-even p,
    which is what the refinement is for.
    """
    p = _as_p(p)
    if g is not None or not isinstance(f, TrigPoly):
        scale, m = _mean_power(_samples(f, g, p), p)
        return _norm_from(scale, m, p)
    F, _ = compress(f)
    if F.is_zero():
        return 0.0
    grid = grid_for(F.band, p)
    val = _norm_from(*_mean_power(transform(F, grid), p), p)
    if p % 2 == 0:
        # |F|^p is a trigonometric polynomial the policy grid integrates exactly
        return val
    size = grid.size
    while 2 * size <= max_size:
        size *= 2
        new = _norm_from(*_mean_power(transform(F, GridConfig(size)), p), p)
        done = abs(new - val) <= rtol * new
        val = new
        if done:
            break
    return val


def pair(f, h, g: GridConfig | None = None) -> complex:
    """Bilinear pairing (1/2pi) int f h dtheta; no conjugation.

    ``h`` is a grid function; ``f`` may be a TrigPoly or grid samples.
    """
    h = np.asarray(h, dtype=complex)
    if g is None:
        g = GridConfig(h.shape[-1])
    if h.shape[-1] != g.size:
        raise SizingError(f"h has length {h.shape[-1]}, grid has size {g.size}")
    fs = transform(f, g) if isinstance(f, TrigPoly) else np.asarray(f, dtype=complex)
    if fs.shape != h.shape:
        raise SizingError(f"shape mismatch {fs.shape} vs {h.shape}")
    return complex(np.mean(fs * h))


def _duality_samples(y: np.ndarray, p: float) -> np.ndarray:
    """|y|^(p-2) conj(y) / ||y||_p^(p-1) on the grid, with 0 at zeros of y."""
    a = np.abs(y)
    norm = _norm_from(*_mean_power(y, p), p)
    if norm == 0:
        raise DegenerateInputError("duality map of the zero function")
    w = np.zeros_like(y)
    nz = a > 0
    # |y|^(p-2) conj(y) / norm^(p-1) == (|y|/norm)^(p-1) * conj(y)/|y|
    w[nz] = (a[nz] / norm) ** (p - 1) * np.conj(y[nz]) / a[nz]
    return w


def duality_map(f, p, g: GridConfig | None = None) -> np.ndarray:
    """Grid samples of h = ||f||_p^(1-p) |f|^(p-2) conj(f).

    ``h`` has unit L^{p'} norm and ``pair(f, h) == ||f||_p``.
    """
    p = _as_p(p)
    if isinstance(f, TrigPoly) and f.is_zero():
        raise DegenerateInputError("duality map of the zero function")
    return _duality_samples(_samples(f, g, p), p)


def compose_eN(f: TrigPoly, N: int) -> TrigPoly:
    """f composed with z -> z^N: coefficient k moves to index k*N."""
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    N = int(N)
    if f.is_zero():
        return f
    out = np.zeros(N * (len(f.coeffs) - 1) + 1, dtype=complex)
    out[::N] = f.coeffs
    return TrigPoly(out, N * f.offset)
