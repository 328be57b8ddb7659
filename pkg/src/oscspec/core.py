"""Shared domain types, dimensionless conventions and unit conversions.

All internal computation is dimensionless: the curved models are controlled by
the stiffness mu = M*k*rho**4/hbar**2 and energies are reported as
eps = M*E*rho**2/hbar**2; the flat model uses oscillator units
eps = E/(hbar*sqrt(k/M)).  Physical units exist only at this boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import ConfigurationError


class Geometry(Enum):
    """One of the three constant-curvature background models."""

    FLAT = "flat"
    HYPERBOLIC = "hyperbolic"
    SPHERICAL = "spherical"

    @property
    def curvature_sign(self) -> int:
        if self is Geometry.FLAT:
            return 0
        return -1 if self is Geometry.HYPERBOLIC else +1

    @property
    def curved(self) -> bool:
        return self is not Geometry.FLAT


class Scheme(Enum):
    """Coefficient scheme for the momentum function."""

    NAIVE = "naive"
    CORRECTED = "corrected"


class Method(Enum):
    """How a spectrum entry was obtained."""

    EXACT = "exact"
    WKB_NAIVE = "wkb_naive"
    WKB_CORRECTED = "wkb_corrected"
    ODE_ORACLE = "ode_oracle"


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless stiffness plus an optional physical block for conversions.

    The physical block (M, k, rho) must reproduce mu = M*k*rho**4/hbar**2; for
    the flat model rho plays no role in mu and only M, k enter conversions.
    """

    mu: float
    hbar: float = 1.0
    M: float | None = None
    k: float | None = None
    rho: float | None = None

    def __post_init__(self):
        if self.mu <= 0:
            raise ConfigurationError(f"mu must be positive, got {self.mu}")
        if self.hbar <= 0:
            raise ConfigurationError(f"hbar must be positive, got {self.hbar}")
        if self.has_physical:
            derived = self.M * self.k * self.rho**4 / self.hbar**2
            if abs(derived - self.mu) > 1e-12 * max(abs(self.mu), abs(derived)):
                raise ConfigurationError(
                    f"inconsistent physical block: M*k*rho^4/hbar^2 = {derived!r} != mu = {self.mu!r}"
                )

    @property
    def has_physical(self) -> bool:
        return self.M is not None and self.k is not None and self.rho is not None

    @classmethod
    def from_physical(cls, M: float, k: float, rho: float, hbar: float = 1.0) -> "ModelParams":
        return cls(mu=M * k * rho**4 / hbar**2, hbar=hbar, M=M, k=k, rho=rho)


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Radial and orbital quantum numbers with derived half-integer combinations.

    N and L are kept as exact rationals so identity tests stay exact; float
    conversion happens at use sites.
    """

    n: int
    l: int

    def __post_init__(self):
        if self.n < 0 or self.l < 0:
            raise ConfigurationError(f"quantum numbers must be nonnegative: n={self.n}, l={self.l}")

    @property
    def N(self) -> Fraction:
        """Principal combination 2n + l + 3/2."""
        return Fraction(2 * self.n + self.l) + Fraction(3, 2)

    @property
    def L(self) -> Fraction:
        return Fraction(self.l) + Fraction(1, 2)

    @property
    def L2(self) -> Fraction:
        return self.L * self.L


@dataclass(frozen=True)
class SpectrumEntry:
    """One energy level: dimensionless energy plus provenance and validity."""

    quantum_numbers: QuantumNumbers
    epsilon: float
    method: Method
    bound: bool
    geometry: Geometry = field(default=Geometry.FLAT)


def to_dimensionless(E: float, params: ModelParams, geometry: Geometry) -> float:
    """Convert a physical energy to the model's dimensionless energy."""
    if not params.has_physical:
        raise ConfigurationError("physical block (M, k, rho) required for unit conversion")
    if geometry.curved:
        return params.M * E * params.rho**2 / params.hbar**2
    return E / (params.hbar * math.sqrt(params.k / params.M))


def from_dimensionless(epsilon: float, params: ModelParams, geometry: Geometry) -> float:
    """Inverse of :func:`to_dimensionless`."""
    if not params.has_physical:
        raise ConfigurationError("physical block (M, k, rho) required for unit conversion")
    if geometry.curved:
        return epsilon * params.hbar**2 / (params.M * params.rho**2)
    return epsilon * params.hbar * math.sqrt(params.k / params.M)


def flat_limit_energy(epsilon: float, mu: float) -> float:
    """Curved energy expressed in flat oscillator units, eps/sqrt(mu).

    For fixed (n, l) this tends to N as mu grows.
    """
    if mu <= 0:
        raise ConfigurationError(f"mu must be positive, got {mu}")
    return epsilon / math.sqrt(mu)
