"""Branch-tracked contour integration of the WKB term integrals.

The zero-counting contour around the turning-point cuts is deformation-
equivalent to circles around the excluded points ({0, inf} flat, {0, +-1, inf}
hyperbolic, {0, +-i, inf} spherical): the cuts run between paired turning
points on the real axis, so none of the circles crosses a cut.  Each term
integral is assembled as

    sum over finite excluded circles (counterclockwise)  -  large circle,

then weighted by i**order so that reported values match the closed-form
residue sums: order 0 gives 2*pi times the bound-branch action sum and order 1
gives -2*pi*hbar for every geometry and coefficient set.

The square-root branch of Q0 is anchored at +sqrt(Pi^2) on the positive real
axis inside the classically allowed region and continued by phase tracking;
whenever the phase of Pi^2 advances more than pi/2 between samples the path is
refined.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .coefficients import (
    CoefficientSet,
    DenominatorKind,
    MomentumField,
    delta,
    numerator,
    pi_squared,
)
from .core import Geometry, Scheme
from .errors import BranchStepError, NoClassicalRegionError, QuadratureError
from .quantize import two_term_sum

_HBAR = 1.0
_HALF_PI = math.pi / 2.0
_REL_TOL = 1e-8
_ABS_TOL = 1e-10
_MAX_SAMPLES = 1 << 20
_SUB_SAMPLES = 32  # per derivative circle for orders >= 3


@dataclass
class BranchState:
    """Continuation token: last visited point and the tracked Q0 there."""

    z: complex
    q0: complex


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    orientation: int = 1  # +1 counterclockwise
    start_angle: float = _HALF_PI


@dataclass(frozen=True)
class ContourSpec:
    circles: tuple[Circle, ...]
    large_circle_radius: float
    samples_per_circle: int = 1024

    def __post_init__(self):
        if self.samples_per_circle < 64:
            raise ValueError("samples_per_circle must be >= 64")
        if any(c.radius <= 0 for c in self.circles) or self.large_circle_radius <= 0:
            raise ValueError("circle radii must be positive")


@dataclass(frozen=True)
class WkbTermValue:
    order: int
    integral: complex
    scheme: Scheme
    geometry: Geometry


@dataclass(frozen=True)
class HigherOrderReport:
    """Measured magnitudes of higher WKB term integrals; never asserts."""

    values: dict[int, complex]
    geometry: Geometry
    scheme: Scheme
    epsilon: float

    @property
    def magnitudes(self) -> dict[int, float]:
        return {k: abs(v) for k, v in self.values.items()}


def turning_points(coeffs: CoefficientSet) -> tuple[float, float]:
    """Positive real turning points 0 < z1 < z2 of the quartic numerator."""
    A, B, C = coeffs.A, coeffs.B, coeffs.C
    disc = B * B - 4.0 * A * C
    if disc < 0:
        raise NoClassicalRegionError("B^2-4AC", disc)
    w_lo = (-B + math.sqrt(disc)) / (2.0 * A)  # A < 0: this is the smaller root
    w_hi = (-B - math.sqrt(disc)) / (2.0 * A)
    if w_lo <= 0 or w_hi <= 0:
        raise NoClassicalRegionError("z^2 turning points", min(w_lo, w_hi))
    return math.sqrt(w_lo), math.sqrt(w_hi)


def anchor_state(field: MomentumField) -> BranchState:
    """Branch anchor: +sqrt(Pi^2) at the geometric mean of the turning points."""
    c = field.coefficients
    za = (c.C / c.A) ** 0.25  # = sqrt(z1*z2), inside the allowed region
    p = complex(pi_squared(field, complex(za)))
    if p.real <= 0:
        raise NoClassicalRegionError("Pi^2(anchor)", p.real)
    return BranchState(complex(za), math.sqrt(p.real) + 0.0j)


def default_contour(field: MomentumField, samples_per_circle: int = 1024,
                    radius_factor: float = 0.35) -> ContourSpec:
    """Circles around the excluded points, radii scaled to the singularity gaps."""
    z1, z2 = turning_points(field.coefficients)
    circles = [Circle(0.0 + 0.0j, radius_factor * z1)]
    if field.denominator_kind is DenominatorKind.ONE_MINUS_Z2_SQ:
        gap = 1.0 - z2
        if gap <= 0:
            raise NoClassicalRegionError("1 - z2 (outer turning point beyond pole)", gap)
        circles += [Circle(1.0 + 0.0j, radius_factor * gap),
                    Circle(-1.0 + 0.0j, radius_factor * gap)]
        R = 2.0 * max(z2, 1.0) + 1.0
    elif field.denominator_kind is DenominatorKind.ONE_PLUS_Z2_SQ:
        circles += [Circle(1j, radius_factor, start_angle=0.0),
                    Circle(-1j, radius_factor, start_angle=0.0)]
        R = 2.0 * max(z2, 1.0) + 1.0
    else:
        R = 2.0 * z2 + 1.0
    return ContourSpec(tuple(circles), R, samples_per_circle)


def validate_contour(spec: ContourSpec, field: MomentumField) -> None:
    z1, z2 = turning_points(field.coefficients)
    singular = [z1, -z1, z2, -z2] + [complex(p) for p in field.poles]
    for c in spec.circles:
        for s in singular:
            if abs(abs(s - c.center) - c.radius) < 1e-6:
                raise ValueError(f"circle at {c.center} passes within 1e-6 of {s}")
    if spec.large_circle_radius <= max(abs(complex(s)) for s in singular):
        raise ValueError("large circle must enclose every turning point and pole")


# --- rational building blocks -------------------------------------------------

def _dlog_denominator(field: MomentumField, z):
    z2 = z * z
    if field.denominator_kind is DenominatorKind.ONE_MINUS_Z2_SQ:
        return -4.0 * z / (1.0 - z2)
    if field.denominator_kind is DenominatorKind.ONE_PLUS_Z2_SQ:
        return 4.0 * z / (1.0 + z2)
    return z * 0.0


def _dlog_denominator_prime(field: MomentumField, z):
    z2 = z * z
    if field.denominator_kind is DenominatorKind.ONE_MINUS_Z2_SQ:
        return -4.0 / (1.0 - z2) - 8.0 * z2 / (1.0 - z2) ** 2
    if field.denominator_kind is DenominatorKind.ONE_PLUS_Z2_SQ:
        return 4.0 / (1.0 + z2) - 8.0 * z2 / (1.0 + z2) ** 2
    return z * 0.0


def _q1(field: MomentumField, z):
    c = field.coefficients
    num = numerator(field, z)
    num_p = (4.0 * c.A * z * z + 2.0 * c.B) * z
    return -(z / 4.0) * (num_p / num - _dlog_denominator(field, z))


def _q1_t_derivative(field: MomentumField, z):
    """d(Q1)/dt = z * d(Q1)/dz, exactly, from the rational form."""
    c = field.coefficients
    num = numerator(field, z)
    num_p = (4.0 * c.A * z * z + 2.0 * c.B) * z
    num_pp = 12.0 * c.A * z * z + 2.0 * c.B
    G = _dlog_denominator(field, z)
    Gp = _dlog_denominator_prime(field, z)
    ratio = num_p / num
    dq1 = -0.25 * (ratio - G) - (z / 4.0) * (num_pp / num - ratio * ratio - Gp)
    return z * dq1


def _dist_to_singular(field: MomentumField, z):
    """Distance to the branch cuts and poles (cuts lie on the real axis)."""
    z1, z2 = turning_points(field.coefficients)
    z = np.asarray(z, dtype=complex)
    d = np.abs(z - (np.clip(z.real, z1, z2) + 0.0j))
    d = np.minimum(d, np.abs(z - (np.clip(z.real, -z2, -z1) + 0.0j)))
    for p in field.poles:
        d = np.minimum(d, np.abs(z - p))
    return d


def _qn_values(order: int, field: MomentumField, zs, q0s, cache: dict | None = None):
    """Q_order at an array of points; q0s carries the tracked branch there.

    Orders 0-2 are closed-form; higher orders use the Riccati recursion with
    Cauchy-integral differentiation on per-point circles.
    """
    if cache is None:
        cache = {}
    if order in cache:
        return cache[order]
    if order == 0:
        val = q0s
    elif order == 1:
        val = _q1(field, zs)
    elif order == 2:
        v1 = _q1(field, zs)
        val = -(_q1_t_derivative(field, zs) + v1 * v1 + delta(field, zs)) / (2.0 * q0s)
    else:
        zs_arr = np.atleast_1d(np.asarray(zs, dtype=complex))
        q0_arr = np.atleast_1d(np.asarray(q0s, dtype=complex))
        rho = np.minimum(0.1, 0.5 * _dist_to_singular(field, zs_arr))
        if np.any(rho < 1e-8):
            raise BranchStepError("derivative circle collapses onto a singularity")
        theta = 2.0 * np.pi * np.arange(_SUB_SAMPLES) / _SUB_SAMPLES
        w = zs_arr[:, None] + rho[:, None] * np.exp(1j * theta)[None, :]
        pw = pi_squared(field, w)
        q0w = np.sqrt(pw)
        # circles never enclose a branch point, so the branch follows the center
        flip = np.abs(q0w - q0_arr[:, None]) > np.abs(q0w + q0_arr[:, None])
        q0w = np.where(flip, -q0w, q0w)
        fw = _qn_values(order - 1, field, w.ravel(), q0w.ravel()).reshape(w.shape)
        fprime = np.mean(fw * np.exp(-1j * theta)[None, :], axis=1) / rho
        deriv_t = zs_arr * fprime
        cross = np.zeros_like(zs_arr)
        for k in range(1, order):
            cross = cross + (_qn_values(order - k, field, zs_arr, q0_arr, cache)
                             * _qn_values(k, field, zs_arr, q0_arr, cache))
        val = -(deriv_t + cross) / (2.0 * q0_arr)
        if np.isscalar(zs) or np.asarray(zs).ndim == 0:
            val = complex(val[0])
    cache[order] = val
    return val


def q_term(order: int, field: MomentumField, z: complex, state: BranchState) -> complex:
    """Q_order at z, continuing the branch from ``state`` (which is advanced).

    The single continuation step must keep the phase of Pi^2 within pi/2;
    larger jumps raise :class:`BranchStepError` so the caller can refine.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    p_prev = complex(pi_squared(field, state.z))
    p_new = complex(pi_squared(field, complex(z)))
    if p_new == 0:
        raise NoClassicalRegionError("Pi^2(z)", 0.0)
    if abs(cmath.phase(p_new / p_prev)) > _HALF_PI:
        raise BranchStepError(
            f"phase of Pi^2 jumps by more than pi/2 between {state.z} and {z}; refine the path"
        )
    w = cmath.sqrt(p_new)
    if abs(w - state.q0) > abs(w + state.q0):
        w = -w
    state.z = complex(z)
    state.q0 = w
    return complex(_qn_values(order, field, np.array([z], complex), np.array([w], complex))[0])


# --- path walking and circle sweeps --------------------------------------------

def _refine_against_phase(field: MomentumField, pts: np.ndarray, max_points: int = 1 << 19):
    """Insert midpoints until adjacent Pi^2 phases differ by less than pi/2."""
    while True:
        p = pi_squared(field, pts)
        if np.any(p == 0):
            raise BranchStepError("path passes through a turning point")
        jumps = np.abs(np.angle(p[1:] / p[:-1]))
        if not np.any(jumps > _HALF_PI):
            return pts, p
        if 2 * len(pts) - 1 > max_points:
            raise BranchStepError("branch refinement exceeded the sample cap")
        out = np.empty(2 * len(pts) - 1, dtype=complex)
        out[0::2] = pts
        out[1::2] = 0.5 * (pts[1:] + pts[:-1])
        pts = out


def _walk(field: MomentumField, start: BranchState, waypoints) -> BranchState:
    """Continue the branch along a polyline; returns the state at the last point."""
    pts = [np.linspace(a, b, 65)[:-1] for a, b in zip(waypoints[:-1], waypoints[1:])]
    path = np.concatenate([np.concatenate(pts), [complex(waypoints[-1])]])
    path, p = _refine_against_phase(field, path)
    q0 = _kernels.continue_sqrt(np.ascontiguousarray(p, dtype=complex), start.q0)
    return BranchState(complex(path[-1]), complex(q0[-1]))


def _circle_start(circle: Circle) -> complex:
    return circle.center + circle.radius * cmath.exp(1j * circle.start_angle)


def _waypoints_to(anchor_z: complex, circle: Circle) -> list[complex]:
    target = _circle_start(circle)
    if target.imag >= -1e-12:
        return [anchor_z, target]
    # lower-half-plane target: cross the real axis outside the cuts, to the right
    x_out = max(abs(circle.center.real), abs(circle.center.imag), abs(anchor_z)) + 2.5
    return [anchor_z, anchor_z + 0.4j, x_out + 0.4j, x_out - 0.4j, target]


def _circle_integral(order: int, field: MomentumField, circle: Circle,
                     start: BranchState, n0: int) -> complex:
    """ccw integral of Q_order(z)/z around one circle, with adaptive doubling."""
    needs_branch = order != 1
    n = max(64, n0)
    prev = None
    diagnostics = {"center": circle.center, "radius": circle.radius, "order": order}
    while n <= _MAX_SAMPLES:
        th = circle.start_angle + 2.0 * np.pi * np.arange(n + 1) / n
        zs = circle.center + circle.radius * np.exp(1j * th)
        q0 = None
        if needs_branch:
            p = pi_squared(field, zs)
            if np.any(np.abs(np.angle(p[1:] / p[:-1])) > _HALF_PI):
                n *= 2
                continue
            q0 = _kernels.continue_sqrt(np.ascontiguousarray(p, dtype=complex), start.q0)
            if abs(q0[-1] - q0[0]) > 1e-6 * (1.0 + abs(q0[0])):
                diagnostics["closure_error"] = abs(q0[-1] - q0[0])
                n *= 2
                continue
        fvals = _qn_values(order, field, zs, q0)
        integrand = fvals / zs * (1j * (zs - circle.center))
        val = complex(np.trapezoid(integrand, th))
        if prev is not None and abs(val - prev) <= max(_ABS_TOL, _REL_TOL * abs(val)):
            return val
        prev = val
        n *= 2
    diagnostics["last_value"] = prev
    diagnostics["samples"] = n // 2
    raise QuadratureError("circle quadrature did not converge", diagnostics)


def integrate_term(order: int, field: MomentumField, contour: ContourSpec | None = None) -> WkbTermValue:
    """The WKB term integral over the zero-counting contour.

    Reported in the convention of :func:`analytic_residue_sum`: order 0 is
    real and equals 2*pi times the bound-branch action sum at bound energies,
    order 1 equals -2*pi*hbar.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if contour is None:
        contour = default_contour(field)
    validate_contour(contour, field)
    anchor = anchor_state(field)
    total = 0.0 + 0.0j
    for circle in contour.circles:
        start = _walk(field, anchor, _waypoints_to(anchor.z, circle)) if order != 1 else anchor
        total += circle.orientation * _circle_integral(order, field, circle, start,
                                                       contour.samples_per_circle)
    large = Circle(0.0 + 0.0j, contour.large_circle_radius)
    start = _walk(field, anchor, _waypoints_to(anchor.z, large)) if order != 1 else anchor
    total -= _circle_integral(order, field, large, start, contour.samples_per_circle)
    value = (1j) ** order * total
    return WkbTermValue(order, value, field.coefficients.scheme, field.geometry)


def analytic_residue_sum(order: int, coeffs: CoefficientSet, geometry: Geometry | None = None) -> complex:
    """Closed-form residue value of the term integral, orders 0 and 1 only."""
    if order not in (0, 1):
        raise ValueError("analytic residue sums exist for orders 0 and 1 only")
    if order == 1:
        # one residue of -1/4 at each of the four turning points, independent
        # of the coefficients
        return complex(-2.0 * math.pi * _HBAR)
    collapsed = two_term_sum(coeffs, normalized=True) + _HBAR
    return complex(2.0 * math.pi * collapsed)


def higher_order_vanishing(field: MomentumField, orders, contour: ContourSpec | None = None) -> HigherOrderReport:
    """Measure |contour integral| for each requested order >= 2."""
    orders = list(orders)
    if any(o < 2 for o in orders):
        raise ValueError("higher-order report covers orders >= 2")
    values = {o: integrate_term(o, field, contour).integral for o in orders}
    return HigherOrderReport(values, field.geometry, field.coefficients.scheme,
                             field.coefficients.epsilon_used)


def wkb_series(field: MomentumField, zs, q0s, order_max: int):
    """Truncated series Q = sum_n (hbar/i)^n Q_n at tracked points."""
    cache: dict = {}
    total = np.zeros_like(np.asarray(zs, dtype=complex))
    for nn in range(order_max + 1):
        total = total + (-1j) ** nn * _qn_values(nn, field, zs, q0s, cache)
    return total


def riccati_residual(field: MomentumField, probe_radius: float, samples: int = 256,
                     order_max: int = 4):
    """|(hbar/i) Q' + Q^2 - Pi^2 + (hbar/i)^2 Delta| on a probe circle.

    Q is truncated at ``order_max``; Q' uses the same Cauchy-circle
    differentiation as the high-order recursion.  Returns the magnitudes at
    each probe point.
    """
    anchor = anchor_state(field)
    probe = Circle(0.0 + 0.0j, probe_radius)
    start = _walk(field, anchor, _waypoints_to(anchor.z, probe))
    th = probe.start_angle + 2.0 * np.pi * np.arange(samples + 1) / samples
    zs = probe.center + probe.radius * np.exp(1j * th)
    p = pi_squared(field, zs)
    q0 = _kernels.continue_sqrt(np.ascontiguousarray(p, dtype=complex), start.q0)
    zs, q0, p = zs[:-1], q0[:-1], p[:-1]

    qser = wkb_series(field, zs, q0, order_max)
    rho = np.minimum(0.1, 0.5 * _dist_to_singular(field, zs))
    sub = 2.0 * np.pi * np.arange(_SUB_SAMPLES) / _SUB_SAMPLES
    w = zs[:, None] + rho[:, None] * np.exp(1j * sub)[None, :]
    pw = pi_squared(field, w)
    q0w = np.sqrt(pw)
    flip = np.abs(q0w - q0[:, None]) > np.abs(q0w + q0[:, None])
    q0w = np.where(flip, -q0w, q0w)
    fw = _series_on(field, w, q0w, order_max)
    qprime_t = zs * (np.mean(fw * np.exp(-1j * sub)[None, :], axis=1) / rho)
    residual = -1j * _HBAR * qprime_t + qser * qser - p - _HBAR * _HBAR * delta(field, zs)
    return np.abs(residual)


def _series_on(field, w, q0w, order_max):
    return wkb_series(field, w.ravel(), q0w.ravel(), order_max).reshape(w.shape)
