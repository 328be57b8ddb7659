"""Closed-form spectra and root-solved two-term quantization conditions.

Sign conventions: every radical is a nonnegative real.  The raw two-term sum
follows the printed residue pattern of each geometry; bound states live on the
branch where sqrt(mu - 2*eps + 1) = sqrt(1 + 4*mu)/2 - N (hyperbolic) and
sqrt(mu + 2*eps + 1) = N + sqrt(1 + 4*mu)/2 (spherical), so the solver flips
the sign of the middle radical in the hyperbolic case before matching the
condition to 2*hbar*n.
"""

from __future__ import annotations

import math

from .coefficients import CoefficientSet, build
from .core import Geometry, Method, QuantumNumbers, Scheme, SpectrumEntry
from .errors import NoBoundStateError, NoClassicalRegionError

_HBAR = 1.0


def exact_epsilon(geometry: Geometry, mu: float, qn: QuantumNumbers) -> SpectrumEntry:
    """Exact dimensionless energy for one (n, l); depends on qn only through N."""
    N = float(qn.N)
    if geometry is Geometry.FLAT:
        return SpectrumEntry(qn, N, Method.EXACT, True, geometry)
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    s = math.sqrt(1.0 + 4.0 * mu)
    if geometry is Geometry.HYPERBOLIC:
        two_eps = -N * N + s * N + 0.75
        # bound: strictly below the well top AND on the rising branch of the parabola
        bound = two_eps < mu and N < s / 2.0
        return SpectrumEntry(qn, two_eps / 2.0, Method.EXACT, bound, geometry)
    two_eps = N * N + s * N - 0.75
    return SpectrumEntry(qn, two_eps / 2.0, Method.EXACT, True, geometry)


def naive_wkb_epsilon(geometry: Geometry, mu: float, qn: QuantumNumbers) -> SpectrumEntry:
    """Two-term condition with un-shifted coefficients, solved in closed form."""
    N = float(qn.N)
    if geometry is Geometry.FLAT:
        # the naive rule is already exact in flat space
        return SpectrumEntry(qn, N, Method.WKB_NAIVE, True, geometry)
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    r = 2.0 * math.sqrt(mu)
    if geometry is Geometry.HYPERBOLIC:
        two_eps = -N * N + r * N + 1.0
        bound = two_eps < mu and N < r / 2.0
        return SpectrumEntry(qn, two_eps / 2.0, Method.WKB_NAIVE, bound, geometry)
    two_eps = N * N + r * N - 1.0
    return SpectrumEntry(qn, two_eps / 2.0, Method.WKB_NAIVE, True, geometry)


def _radical(name: str, value: float) -> float:
    if value < 0:
        raise NoClassicalRegionError(name, value)
    return math.sqrt(value)


def two_term_sum(coeffs: CoefficientSet, normalized: bool = False) -> float:
    """Left side of the two-term condition, in units of hbar.

    With ``normalized=False`` the sum carries the raw printed sign pattern;
    ``normalized=True`` selects the bound branch (hyperbolic middle radical
    enters with a minus sign), which is what the root solver matches to
    2*hbar*n.
    """
    A, B, C = coeffs.A, coeffs.B, coeffs.C
    root_c = _radical("-C", -C)
    if coeffs.geometry is Geometry.FLAT:
        if A >= 0:
            raise NoClassicalRegionError("-A", -A)
        return -root_c + B / (2.0 * math.sqrt(-A)) - _HBAR
    root_a = _radical("-A", -A)
    if coeffs.geometry is Geometry.HYPERBOLIC:
        mid = _radical("-A-B-C", -A - B - C)
        sign = -1.0 if normalized else 1.0
        return -root_c + sign * mid + root_a - _HBAR
    mid = _radical("-A+B-C", -A + B - C)
    return -root_c + mid - root_a - _HBAR


def _bisect(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Plain bisection for an increasing f with f(lo) < 0 < f(hi)."""
    flo, fhi = f(lo), f(hi)
    if flo > 0 or fhi < 0:
        raise NoBoundStateError(f"no root bracketed in [{lo:g}, {hi:g}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol or (hi - lo) <= 1e-15 * max(1.0, abs(mid)):
            return mid
        if fm < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_epsilon(geometry: Geometry, mu: float, qn: QuantumNumbers, scheme: Scheme) -> SpectrumEntry:
    """Root-solve the branch-normalized two-term condition for eps.

    For the corrected scheme the result reproduces :func:`exact_epsilon` to
    solver tolerance; for the naive scheme it reproduces
    :func:`naive_wkb_epsilon`.
    """
    target = 2.0 * float(qn.n)

    def residual(eps: float) -> float:
        return two_term_sum(build(geometry, mu, qn.l, eps, scheme), normalized=True) - target

    if geometry is Geometry.FLAT:
        lo, hi = 0.0, 4.0
        while residual(hi) < 0:
            hi *= 2.0
            if hi > 1e12:
                raise NoBoundStateError("flat condition has no root")
    elif geometry is Geometry.HYPERBOLIC:
        # classical region exists only below the radicand edge 2*eps = mu + 1
        lo, hi = 0.0, (mu + 1.0) / 2.0
        if residual(hi) < 0:
            raise NoBoundStateError(
                f"hyperbolic state n={qn.n}, l={qn.l} lies beyond the spectrum at mu={mu:g}"
            )
    else:
        lo, hi = 0.0, max(4.0, mu)
        while residual(hi) < 0:
            hi *= 2.0
            if hi > 1e15:
                raise NoBoundStateError("spherical condition has no root")
    eps = _bisect(residual, lo, hi)
    method = Method.WKB_CORRECTED if scheme is Scheme.CORRECTED else Method.WKB_NAIVE
    bound = True
    if geometry is Geometry.HYPERBOLIC:
        bound = 2.0 * eps < mu
    return SpectrumEntry(qn, eps, method, bound, geometry)


def bound_state_count(mu: float, l: int) -> int:
    """Number of hyperbolic bound states at fixed l (strict 2*eps < mu)."""
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if l < 0:
        raise ValueError(f"l must be nonnegative, got {l}")
    count = 0
    while exact_epsilon(Geometry.HYPERBOLIC, mu, QuantumNumbers(count, l)).bound:
        count += 1
    return count
