"""Coefficient triples, the momentum-squared function and its correction term.

In the log variable t (z = e**t) every radial problem reduces to

    S'' + [Pi^2(t)/hbar^2 + Delta(t)] S = 0,
    Pi^2 = (A z^4 + B z^2 + C) / D(z),

with D = 1 (flat), (1-z^2)^2 (hyperbolic, z = tanh r) or (1+z^2)^2
(spherical, z = tan r).  The naive scheme takes the triple as it falls out of
the substitution; the corrected scheme shifts constant multiples of hbar^2
between (A, B) and Delta so that the two-term quantization condition becomes
exact.  Both schemes represent the same differential equation:
Pi^2/hbar^2 + Delta is scheme-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Geometry, Scheme
from .errors import PoleEvaluationError

_POLE_TOL = 1e-12


class DenominatorKind(Enum):
    ONE = "one"
    ONE_MINUS_Z2_SQ = "(1-z^2)^2"
    ONE_PLUS_Z2_SQ = "(1+z^2)^2"


class DeltaKind(Enum):
    NONE = "none"
    HYPERBOLIC_NAIVE = "hyperbolic_naive"
    HYPERBOLIC_CORRECTED = "hyperbolic_corrected"
    SPHERICAL_NAIVE = "spherical_naive"
    SPHERICAL_CORRECTED = "spherical_corrected"


@dataclass(frozen=True)
class CoefficientSet:
    """The (A, B, C) triple of the quartic numerator, with scheme bookkeeping.

    ``alpha`` and ``beta`` are the shifts of A and B (in units of hbar^2)
    relative to the naive scheme; both are zero for the naive scheme.
    """

    geometry: Geometry
    scheme: Scheme
    A: float
    B: float
    C: float
    epsilon_used: float
    l_used: int
    alpha: float = 0.0
    beta: float = 0.0

    @property
    def is_noop_correction(self) -> bool:
        """True when a corrected scheme was requested but nothing changes (flat)."""
        return self.scheme is Scheme.CORRECTED and self.geometry is Geometry.FLAT


@dataclass(frozen=True)
class MomentumField:
    """A coefficient set bound to its denominator and correction-term shapes."""

    coefficients: CoefficientSet
    denominator_kind: DenominatorKind
    delta_kind: DeltaKind

    @property
    def geometry(self) -> Geometry:
        return self.coefficients.geometry

    @property
    def poles(self) -> tuple[complex, ...]:
        if self.denominator_kind is DenominatorKind.ONE_MINUS_Z2_SQ:
            return (1.0 + 0j, -1.0 + 0j)
        if self.denominator_kind is DenominatorKind.ONE_PLUS_Z2_SQ:
            return (1j, -1j)
        return ()


def build(geometry: Geometry, mu: float, l: int, epsilon: float, scheme: Scheme) -> CoefficientSet:
    """Build the coefficient triple for one geometry, scheme and trial energy."""
    if l < 0:
        raise ValueError(f"l must be nonnegative, got {l}")
    if geometry.curved and mu <= 0:
        raise ValueError(f"mu must be positive for curved geometries, got {mu}")
    L2 = (l + 0.5) ** 2
    if geometry is Geometry.FLAT:
        # units M = k = 1; the corrected scheme is a no-op here
        return CoefficientSet(geometry, scheme, A=-1.0, B=2.0 * epsilon, C=-L2,
                              epsilon_used=epsilon, l_used=l)
    if geometry is Geometry.HYPERBOLIC:
        if scheme is Scheme.NAIVE:
            return CoefficientSet(geometry, scheme, A=-mu, B=2.0 * epsilon - 1.0 + L2, C=-L2,
                                  epsilon_used=epsilon, l_used=l)
        return CoefficientSet(geometry, scheme, A=-mu - 0.25, B=2.0 * epsilon - 0.75 + L2, C=-L2,
                              epsilon_used=epsilon, l_used=l, alpha=-0.25, beta=0.25)
    if scheme is Scheme.NAIVE:
        return CoefficientSet(geometry, scheme, A=-mu, B=2.0 * epsilon + 1.0 - L2, C=-L2,
                              epsilon_used=epsilon, l_used=l)
    return CoefficientSet(geometry, scheme, A=-mu - 0.25, B=2.0 * epsilon + 0.75 - L2, C=-L2,
                          epsilon_used=epsilon, l_used=l, alpha=-0.25, beta=-0.25)


def momentum_field(coeffs: CoefficientSet) -> MomentumField:
    """Attach denominator and correction-term shapes to a coefficient set."""
    geom, scheme = coeffs.geometry, coeffs.scheme
    if geom is Geometry.FLAT:
        return MomentumField(coeffs, DenominatorKind.ONE, DeltaKind.NONE)
    if geom is Geometry.HYPERBOLIC:
        kind = DeltaKind.HYPERBOLIC_NAIVE if scheme is Scheme.NAIVE else DeltaKind.HYPERBOLIC_CORRECTED
        return MomentumField(coeffs, DenominatorKind.ONE_MINUS_Z2_SQ, kind)
    kind = DeltaKind.SPHERICAL_NAIVE if scheme is Scheme.NAIVE else DeltaKind.SPHERICAL_CORRECTED
    return MomentumField(coeffs, DenominatorKind.ONE_PLUS_Z2_SQ, kind)


def build_field(geometry: Geometry, mu: float, l: int, epsilon: float, scheme: Scheme) -> MomentumField:
    """Shorthand: build the coefficients and wrap them in a MomentumField."""
    return momentum_field(build(geometry, mu, l, epsilon, scheme))


def _check_poles(field: MomentumField, z):
    for pole in field.poles:
        bad = np.abs(np.asarray(z) - pole) < _POLE_TOL
        if np.any(bad):
            raise PoleEvaluationError(pole)


def numerator(field: MomentumField, z):
    c = field.coefficients
    z2 = np.asarray(z) ** 2 if not np.isscalar(z) else z * z
    return (c.A * z2 + c.B) * z2 + c.C


def pi_squared(field: MomentumField, z):
    """Momentum-squared (A z^4 + B z^2 + C)/D(z); works on scalars and arrays."""
    _check_poles(field, z)
    num = numerator(field, z)
    z2 = np.asarray(z) ** 2 if not np.isscalar(z) else z * z
    if field.denominator_kind is DenominatorKind.ONE:
        return num
    if field.denominator_kind is DenominatorKind.ONE_MINUS_Z2_SQ:
        return num / (1.0 - z2) ** 2
    return num / (1.0 + z2) ** 2


def delta(field: MomentumField, z):
    """Correction term of the active scheme; even in z and zero at z = 0."""
    _check_poles(field, z)
    z2 = np.asarray(z) ** 2 if not np.isscalar(z) else z * z
    kind = field.delta_kind
    if kind is DeltaKind.NONE:
        return z2 * 0.0
    if kind is DeltaKind.HYPERBOLIC_NAIVE:
        return z2 * (5.0 - z2) / (4.0 * (1.0 - z2) ** 2)
    if kind is DeltaKind.HYPERBOLIC_CORRECTED:
        # fixed by requiring Pi^2/hbar^2 + Delta to be scheme-invariant
        return z2 / (1.0 - z2) ** 2
    if kind is DeltaKind.SPHERICAL_NAIVE:
        return -z2 * (5.0 + z2) / (4.0 * (1.0 + z2) ** 2)
    return -z2 / (1.0 + z2) ** 2
