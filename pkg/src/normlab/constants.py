"""Closed-form and one-dimensional constants indexed by the exponent p."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

__all__ = ["ConstantsRow", "cp", "cp_objective", "reference_constants", "riesz_norm", "two_power"]

_ALPHA_MIN = 1e-12


def _check(p: float) -> float:
    p = float(p)
    if not (1 < p < math.inf):
        raise ValueError(f"p must lie in (1, inf), got {p}")
    return p


def riesz_norm(p: float) -> float:
    """Norm of the Riesz projection on L^p: 1 / sin(pi/p)."""
    return 1 / math.sin(math.pi / _check(p))


def two_power(p: float) -> float:
    """2^|1 - 2/p|."""
    return 2 ** abs(1 - 2 / _check(p))


def cp_objective(alpha, p: float):
    """(a^(p-1) + b^(p-1))^(1/p) (a^(1/(p-1)) + b^(1/(p-1)))^(1-1/p) with b = 1 - a."""
    a = np.asarray(alpha, dtype=float)
    b = 1 - a
    q = 1 / (p - 1)
    return (a ** (p - 1) + b ** (p - 1)) ** (1 / p) * (a**q + b**q) ** (1 - 1 / p)


def cp(p: float, grid_points: int = 10_000) -> float:
    """The constant C_p = max over 0 < alpha < 1 of :func:`cp_objective`.

    The objective is symmetric under alpha <-> 1 - alpha, so only (0, 1/2]
    is searched: a coarse grid locates the peak, then golden-section search
    refines it to an interval of width ~1e-12.
    """
    p = _check(p)
    if p == 2:
        return 1.0
    alpha = np.linspace(_ALPHA_MIN, 0.5, grid_points)
    vals = cp_objective(alpha, p)
    i = int(np.argmax(vals))
    if i == 0 or i == grid_points - 1 or not (vals[i] > vals[i - 1] and vals[i] > vals[i + 1]):
        # edge peak or a plateau at rounding level (p close to 2)
        return float(vals[i])
    try:
        res = minimize_scalar(
            lambda a: -float(cp_objective(a, p)),
            bracket=(alpha[i - 1], alpha[i], alpha[i + 1]),
            method="golden",
            options={"xtol": 1e-12},
        )
    except ValueError:
        # scalar re-evaluation broke the bracket by rounding; the grid peak stands
        return float(vals[i])
    return float(max(-res.fun, vals[i]))


@dataclass(frozen=True)
class ConstantsRow:
    p: float
    p_conj: float
    riesz: float
    two_power: float
    c_p: float

    def as_dict(self) -> dict:
        return asdict(self)


def reference_constants(p: float) -> ConstantsRow:
    p = _check(p)
    return ConstantsRow(p, p / (p - 1), riesz_norm(p), two_power(p), cp(p))
