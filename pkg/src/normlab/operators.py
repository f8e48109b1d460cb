"""
Riesz projection, Toeplitz operators and Fejer means acting on TrigPoly.

An :class:`OperatorSpec` fixes a finite-dimensional domain (analytic
polynomials of degree <= d, optionally with the first n coefficients forced
to zero; two-sided band [-d, d] for the Riesz projection) so that operators
can be handed to the norm estimator as explicit linear maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy import fft as sfft

from .trig import (
    DomainError,
    GridConfig,
    SizingError,
    TrigPoly,
    _phase,
    inverse,
    monomial,
    transform,
)

__all__ = [
    "Symbol",
    "OperatorSpec",
    "riesz_project",
    "toeplitz_apply",
    "fejer_apply",
    "fejer_kernel",
    "fejer_multiplier",
    "make_symbol",
    "gk_symbol",
    "apply",
    "adjoint_apply",
    "restrict",
    "domain_range",
    "output_range",
    "operator_matrix",
    "sampling_grid",
    "toeplitz",
    "fejer",
    "id_minus_fejer",
    "riesz",
    "identity",
]


@dataclass(frozen=True, eq=False)
class Symbol:
    """Symbol of a Toeplitz operator.

    ``kind == "laurent"``: ``coeffs`` holds the finite Laurent expansion.
    ``kind == "sampled"``: ``func`` evaluates a(e^{i theta}) on arrays of
    theta; values are taken on a grid when the operator is applied.
    """

    kind: str
    sup_norm: float
    coeffs: TrigPoly | None = None
    func: Callable[[np.ndarray], np.ndarray] | None = None
    sup_norm_exact: bool = True
    label: str = ""
    grid: GridConfig | None = None

    def __post_init__(self):
        if self.kind == "laurent" and self.coeffs is None:
            raise ValueError("Laurent symbol needs coefficients")
        if self.kind == "sampled" and self.func is None:
            raise ValueError("sampled symbol needs an evaluation function")
        if self.kind not in ("laurent", "sampled"):
            raise ValueError(f"unknown symbol kind {self.kind!r}")

    def values(self, g: GridConfig) -> np.ndarray:
        if self.kind == "laurent":
            return transform(self.coeffs, g)
        return np.asarray(self.func(g.theta), dtype=complex)


def _gk_values(p: float, sign: int):
    s, c = math.sin(math.pi / p), math.cos(math.pi / p)

    def a(theta):
        theta = np.asarray(theta, dtype=float)
        # theta in {0, -pi} gets the limit from theta > 0
        upper = (theta >= 0) | np.isclose(np.abs(theta), np.pi)
        return np.where(upper, s + 1j * sign * c, s - 1j * sign * c)

    return a


def gk_symbol(p: float, sign: str = "+") -> Symbol:
    """Piecewise-constant unimodular symbol sin(pi/p) +- i cos(pi/p) on +-theta in (0, pi)."""
    if not (1 < p < math.inf):
        raise ValueError(f"p must lie in (1, inf), got {p}")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    sg = 1 if sign == "+" else -1
    return Symbol("sampled", 1.0, func=_gk_values(p, sg), label=f"gk:{sign}:{p:g}")


def make_symbol(kind: str, *args, sup_grid: int = 2**14) -> Symbol:
    """Build one of the built-in symbols.

    ``make_symbol("e", m)``, ``make_symbol("gk", p, sign)`` or
    ``make_symbol("cph", n, h)`` with ``h`` an analytic TrigPoly.  For
    ``cph`` the sup norm is max |h| on a grid of ``sup_grid`` points and is
    flagged approximate.
    """
    if kind == "e":
        (m,) = args
        return Symbol("laurent", 1.0, coeffs=monomial(int(m)), label=f"e{int(m)}")
    if kind == "gk":
        return gk_symbol(*args)
    if kind == "cph":
        n, h = args
        if not isinstance(h, TrigPoly) or not h.is_analytic():
            raise DomainError("cph symbol needs an analytic polynomial h")
        if int(n) != n or n < 0:
            raise ValueError(f"n must be a nonnegative integer, got {n}")
        sup = float(np.abs(transform(h, GridConfig(max(sup_grid, 2 * h.band + 1)))).max())
        return Symbol(
            "laurent", sup, coeffs=monomial(-int(n)) * h, sup_norm_exact=False, label=f"cph:{int(n)}"
        )
    raise ValueError(f"unknown symbol kind {kind!r}")


def riesz_project(f: TrigPoly) -> TrigPoly:
    """Keep the coefficients with k >= 0."""
    if f.is_zero() or f.k_min >= 0:
        return f
    if f.k_max < 0:
        return TrigPoly([])
    return TrigPoly(f.coeffs[-f.k_min :], 0)


def sampling_grid(degree: int) -> GridConfig:
    """Multiplication grid for sampled symbols on degree-`degree` inputs: >= 8 (d + 1), power of two."""
    size = 1 << math.ceil(math.log2(8 * (degree + 1)))
    return GridConfig(size, size / (degree + 1))


def toeplitz_apply(a: Symbol, f: TrigPoly, grid: GridConfig | None = None) -> TrigPoly:
    """T(a) f = P(a f) for analytic f.

    Laurent symbols are applied by exact convolution.  Sampled symbols are
    multiplied pointwise on ``grid`` (default ``sampling_grid(deg f)``) and the
    result is projected onto indices 0 .. size/2 - 1.
    """
    if not f.is_analytic():
        raise DomainError("Toeplitz operators act on analytic polynomials")
    if a.kind == "laurent":
        return riesz_project(a.coeffs * f)
    g = grid or a.grid or sampling_grid(f.k_max if not f.is_zero() else 0)
    if f.band > g.nyquist:
        raise SizingError(f"grid of size {g.size} too small for degree {f.band}")
    return inverse(a.values(g) * transform(f, g), (0, g.size // 2 - 1), g)


def fejer_multiplier(n: int, k) -> np.ndarray:
    """max(0, 1 - |k|/(n+1))."""
    k = np.asarray(k)
    return np.maximum(0.0, 1.0 - np.abs(k) / (n + 1))


def fejer_apply(n: int, f: TrigPoly) -> TrigPoly:
    """Fejer mean K_n f via its triangular coefficient multiplier."""
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n}")
    if f.is_zero():
        return f
    k = np.arange(f.k_min, f.k_max + 1)
    return TrigPoly(f.coeffs * fejer_multiplier(n, k), f.k_min)


def fejer_kernel(n: int, g: GridConfig) -> np.ndarray:
    """Samples of the n-th Fejer kernel (1/(2pi(n+1))) (sin((n+1)t/2) / sin(t/2))^2."""
    if g.size <= 2 * n:
        raise SizingError(f"grid of size {g.size} cannot hold the degree-{n} Fejer kernel")
    t = g.theta
    half = np.sin(t / 2)
    out = np.full(g.size, (n + 1) / (2 * np.pi))
    nz = np.abs(half) > 1e-12
    out[nz] = (np.sin((n + 1) * t[nz] / 2) / half[nz]) ** 2 / (2 * np.pi * (n + 1))
    return out


# ---------------------------------------------------------------------------
# operator specs


_KINDS = ("toeplitz", "fejer", "id_minus_fejer", "riesz", "identity")


@dataclass(frozen=True, eq=False)
class OperatorSpec:
    """An operator restricted to a finite domain.

    Analytic kinds act on {f : f^(k) = 0 unless restrict_n <= k <= degree};
    ``riesz`` acts on the two-sided band [-degree, degree].
    """

    kind: str
    degree: int
    symbol: Symbol | None = None
    n: int = 0
    restrict_n: int = 0
    label: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if self.kind == "toeplitz" and self.symbol is None:
            raise ValueError("Toeplitz operator needs a symbol")
        if self.kind in ("fejer", "id_minus_fejer") and self.n < 0:
            raise ValueError("Fejer index must be nonnegative")
        if not 0 <= self.restrict_n <= self.degree:
            raise ValueError(f"restriction index {self.restrict_n} outside [0, {self.degree}]")

    @property
    def analytic_domain(self) -> bool:
        return self.kind != "riesz"

    def with_degree(self, degree: int) -> "OperatorSpec":
        return replace(self, degree=int(degree))

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == "toeplitz":
            return f"toeplitz:{self.symbol.label}"
        if self.kind in ("fejer", "id_minus_fejer"):
            return f"{self.kind.replace('_', '-')}:{self.n}"
        return self.kind


def toeplitz(symbol: Symbol, degree: int) -> OperatorSpec:
    return OperatorSpec("toeplitz", int(degree), symbol=symbol)


def fejer(n: int, degree: int) -> OperatorSpec:
    return OperatorSpec("fejer", int(degree), n=int(n))


def id_minus_fejer(n: int, degree: int) -> OperatorSpec:
    return OperatorSpec("id_minus_fejer", int(degree), n=int(n))


def riesz(degree: int) -> OperatorSpec:
    return OperatorSpec("riesz", int(degree))


def identity(degree: int) -> OperatorSpec:
    return OperatorSpec("identity", int(degree))


def restrict(A: OperatorSpec, n: int) -> OperatorSpec:
    """Restrict A to the analytic polynomials whose first n coefficients vanish."""
    if int(n) != n or n < 0 or n > A.degree:
        raise ValueError(f"restriction index {n} outside [0, {A.degree}]")
    if not A.analytic_domain and n:
        raise ValueError("restriction is defined for analytic domains only")
    return replace(A, restrict_n=int(n))


def domain_range(A: OperatorSpec) -> tuple[int, int]:
    """Index range (lo, hi) of the free coefficients."""
    if A.kind == "riesz":
        return -A.degree, A.degree
    return A.restrict_n, A.degree


def output_range(A: OperatorSpec) -> tuple[int, int]:
    """Index range guaranteed to contain A f for every f in the domain."""
    lo, hi = domain_range(A)
    if A.kind == "riesz":
        return 0, hi
    if A.kind == "toeplitz":
        a = A.symbol
        if a.kind == "sampled":
            return 0, _symbol_grid(A).size // 2 - 1
        return max(0, lo + a.coeffs.k_min), hi + max(0, a.coeffs.k_max)
    return lo, hi


def _symbol_grid(A: OperatorSpec) -> GridConfig:
    return A.symbol.grid or sampling_grid(A.degree)


def _check_domain(A: OperatorSpec, f: TrigPoly) -> None:
    lo, hi = domain_range(A)
    if not f.is_zero() and (f.k_min < lo or f.k_max > hi):
        raise DomainError(f"{A.name}: input support [{f.k_min}, {f.k_max}] outside [{lo}, {hi}]")


def apply(A: OperatorSpec, f: TrigPoly) -> TrigPoly:
    """A f for f in the domain of A."""
    _check_domain(A, f)
    if A.kind == "identity":
        return f
    if A.kind == "riesz":
        return riesz_project(f)
    if A.kind == "fejer":
        return fejer_apply(A.n, f)
    if A.kind == "id_minus_fejer":
        return f - fejer_apply(A.n, f)
    if A.symbol.kind == "sampled":
        return toeplitz_apply(A.symbol, f, _symbol_grid(A))
    return toeplitz_apply(A.symbol, f)


def _clip(f: TrigPoly, lo: int, hi: int) -> TrigPoly:
    if f.is_zero() or hi < f.k_min or lo > f.k_max:
        return TrigPoly([])
    a, b = max(lo, f.k_min), min(hi, f.k_max)
    return TrigPoly(f.coeffs[a - f.k_min : b - f.k_min + 1], a)


def adjoint_apply(A: OperatorSpec, g: TrigPoly) -> TrigPoly:
    """L^2 adjoint of A (domain -> output range), applied to g."""
    olo, ohi = output_range(A)
    if not g.is_zero() and (g.k_min < olo or g.k_max > ohi):
        raise SizingError(f"{A.name}: g support [{g.k_min}, {g.k_max}] outside output [{olo}, {ohi}]")
    lo, hi = domain_range(A)
    if A.kind in ("identity", "riesz"):
        return _clip(g, lo, hi)
    if A.kind == "fejer":
        return _clip(fejer_apply(A.n, g), lo, hi)
    if A.kind == "id_minus_fejer":
        return _clip(g - fejer_apply(A.n, g), lo, hi)
    a = A.symbol
    if a.kind == "laurent":
        return _clip(a.coeffs.conj() * g, lo, hi)
    grid = _symbol_grid(A)
    return inverse(np.conj(a.values(grid)) * transform(g, grid), (lo, hi), grid)


def operator_matrix(A: OperatorSpec) -> tuple[np.ndarray, tuple[int, int], tuple[int, int]]:
    """Dense matrix of A from domain coefficients to output coefficients.

    Returns ``(M, (lo, hi), (olo, ohi))`` with column j standing for index
    ``lo + j`` and row i for index ``olo + i``.
    """
    lo, hi = domain_range(A)
    olo, ohi = output_range(A)
    nin, nout = hi - lo + 1, ohi - olo + 1
    cols_in = np.arange(lo, hi + 1)
    if A.kind == "identity" or A.kind == "riesz":
        M = np.zeros((nout, nin), dtype=complex)
        rows = cols_in - olo
        ok = (rows >= 0) & (rows < nout)
        M[rows[ok], np.flatnonzero(ok)] = 1.0
    elif A.kind in ("fejer", "id_minus_fejer"):
        m = fejer_multiplier(A.n, cols_in)
        M = np.diag(m if A.kind == "fejer" else 1.0 - m).astype(complex)
    elif A.symbol.kind == "laurent":
        a = A.symbol.coeffs
        rows = np.arange(olo, ohi + 1)
        diff = rows[:, None] - cols_in[None, :]
        idx = diff - a.k_min
        ok = (idx >= 0) & (idx < len(a.coeffs))
        M = np.zeros((nout, nin), dtype=complex)
        M[ok] = a.coeffs[idx[ok]]
    else:
        grid = _symbol_grid(A)
        size = grid.size
        buf = np.zeros((size, nin), dtype=complex)
        buf[cols_in % size, np.arange(nin)] = _phase(cols_in)
        samples = sfft.ifft(buf, axis=0, norm="forward") * A.symbol.values(grid)[:, None]
        rows = np.arange(olo, ohi + 1)
        M = sfft.fft(samples, axis=0, norm="forward")[rows % size] * _phase(rows)[:, None]
    return M, (lo, hi), (olo, ohi)
