"""Operator norm bounds for Toeplitz operators, Fejer means and the Riesz projection on H^p."""

__version__ = "0.1.0"

from .constants import ConstantsRow, cp, reference_constants
from .estimate import (
    BoundPair,
    NormEstimate,
    degree_sweep,
    estimate_norm,
    monotonicity_sweep,
    ratio_gradient,
    restricted_norm_sweep,
    riesz_thorin_bound,
    upper_bound,
)
from .operators import (
    OperatorSpec,
    Symbol,
    adjoint_apply,
    apply,
    fejer,
    fejer_apply,
    fejer_kernel,
    id_minus_fejer,
    identity,
    make_symbol,
    restrict,
    riesz,
    riesz_project,
    toeplitz,
    toeplitz_apply,
)
from .trig import (
    GridConfig,
    PNorm,
    TrigPoly,
    compose_eN,
    duality_map,
    inverse,
    lp_norm,
    monomial,
    pair,
    transform,
)
from .witness import WitnessReport, build_witness, verify_certificate
