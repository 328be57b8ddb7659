"""Bound-state spectra of the quantum oscillator in flat, hyperbolic and
spherical 3-space: closed-form results, two-term WKB quantization, branch-
tracked contour integrals of the WKB series, and an independent radial
eigensolver for cross-validation."""

from ._kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .coefficients import (
    CoefficientSet,
    DeltaKind,
    DenominatorKind,
    MomentumField,
    build,
    build_field,
    delta,
    momentum_field,
    pi_squared,
)
from .contour import (
    BranchState,
    Circle,
    ContourSpec,
    HigherOrderReport,
    WkbTermValue,
    analytic_residue_sum,
    anchor_state,
    default_contour,
    higher_order_vanishing,
    integrate_term,
    q_term,
    riccati_residual,
    turning_points,
)
from .core import (
    Geometry,
    Method,
    ModelParams,
    QuantumNumbers,
    Scheme,
    SpectrumEntry,
    flat_limit_energy,
    from_dimensionless,
    to_dimensionless,
)
from .quantize import (
    bound_state_count,
    exact_epsilon,
    naive_wkb_epsilon,
    solve_epsilon,
    two_term_sum,
)
from .radial import EigenResult, OracleConfig, effective_equation, solve

__version__ = "0.1.0"

__all__ = [
    "BranchState", "Circle", "CoefficientSet", "ContourSpec", "DeltaKind",
    "DenominatorKind", "EigenResult", "Geometry", "HigherOrderReport",
    "KERNEL_IMPLEMENTATION", "Method", "ModelParams", "MomentumField",
    "OracleConfig", "QuantumNumbers", "Scheme", "SpectrumEntry", "WkbTermValue",
    "analytic_residue_sum", "anchor_state", "bound_state_count", "build",
    "build_field", "default_contour", "delta", "effective_equation",
    "exact_epsilon", "flat_limit_energy", "from_dimensionless",
    "higher_order_vanishing", "integrate_term", "momentum_field",
    "naive_wkb_epsilon", "pi_squared", "q_term", "riccati_residual", "solve",
    "solve_epsilon", "to_dimensionless", "turning_points", "two_term_sum",
]
