"""Independent radial Schrödinger eigensolver for the three oscillator problems.

This module never touches the closed-form spectra or the WKB machinery: it
discretizes u'' + W(r) u = 0 (u = r f, sinh(r) f, sin(r) f) with a Numerov
stencil and locates eigenvalues by bisection on the interior node count of the
forward-shot solution, which jumps by one exactly at each eigenvalue of the
truncated problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import Geometry
from .errors import ConfigurationError, DomainError, ResolutionError

# curvature shift from the metric weight: (sinh r)''/sinh r = 1, (sin r)''/sin r = -1
_SHIFT = {Geometry.FLAT: 0.0, Geometry.HYPERBOLIC: -1.0, Geometry.SPHERICAL: 1.0}


@dataclass(frozen=True)
class OracleConfig:
    """Discretization and bisection controls for :func:`solve`."""

    r_max: float | None = None  # override outer truncation (flat/hyperbolic only)
    grid_points: int = 6000
    bisection_tol: float = 1e-9
    max_iterations: int = 200

    def __post_init__(self):
        if self.grid_points < 2000:
            raise ConfigurationError(f"grid_points must be >= 2000, got {self.grid_points}")
        if self.bisection_tol > 1e-8:
            raise ConfigurationError(f"bisection_tol must be <= 1e-8, got {self.bisection_tol}")
        if self.max_iterations < 10:
            raise ConfigurationError("max_iterations too small")


@dataclass(frozen=True)
class EigenResult:
    """Converged eigenvalue with its node count and sampled wavefunction."""

    epsilon: float
    node_count: int
    wavefunction: np.ndarray  # shape (M+1, 2): columns (r, u), peak-normalized
    converged: bool
    message: str = ""


def effective_equation(geometry: Geometry, mu: float, l: int, epsilon: float, r: float):
    """W(r) such that u'' + W u = 0 for the first-derivative-free radial form."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError(f"r must be positive, got {r}")
    if geometry is Geometry.FLAT:
        W = 2.0 * epsilon - r_arr**2 - l * (l + 1) / r_arr**2
    elif geometry is Geometry.HYPERBOLIC:
        W = 2.0 * epsilon - 1.0 - mu * np.tanh(r_arr) ** 2 - l * (l + 1) / np.sinh(r_arr) ** 2
    else:
        if np.any(r_arr >= np.pi / 2):
            raise DomainError(f"spherical domain is (0, pi/2), got r={r}")
        W = 2.0 * epsilon + 1.0 - mu * np.tan(r_arr) ** 2 - l * (l + 1) / np.sin(r_arr) ** 2
    return float(W) if np.isscalar(r) else W


def _outer_radius(geometry: Geometry, mu: float, eps_ref: float, grid_points: int) -> float:
    """Truncation radius: turning point plus enough decay length for ~1e-13 tails."""
    if geometry is Geometry.FLAT:
        rt = math.sqrt(2.0 * max(eps_ref, 1.0))
        return rt + (45.0 / math.sqrt(2.0 * rt)) ** (2.0 / 3.0)
    if geometry is Geometry.HYPERBOLIC:
        arg = min(max((2.0 * eps_ref - 1.0) / mu, 0.1), 1.0 - 1e-9)
        rt = math.atanh(math.sqrt(arg))
        sigma = math.sqrt(max(mu + 1.0 - 2.0 * eps_ref, 1.0))
        return rt + 32.0 / sigma + 2.0
    # spherical: pull the wall in just enough that h^2 |W| / 12 stays small,
    # where the potential wall already suppresses u far below tolerance
    h_est = (math.pi / 2.0) / grid_points
    margin = max(2.0 * h_est * math.sqrt(mu / 3.0), 1e-6)
    return math.pi / 2.0 - margin


def _potential_grid(geometry: Geometry, mu: float, l: int, r_end: float, M: int):
    r = np.linspace(0.0, r_end, M + 1)
    pot = np.empty_like(r)
    pot[0] = 0.0  # never used; the sweep starts at i = 1
    pot[1:] = -effective_equation(geometry, mu, l, 0.0, r[1:])
    return r, pot


def _start_values(r, l: int, epsilon: float, shift: float):
    # series u ~ r^(l+1) (1 + c2 r^2) near the origin
    c2 = -(2.0 * epsilon + shift) / (2.0 * (2 * l + 3))
    u1 = r[1] ** (l + 1) * (1.0 + c2 * r[1] ** 2)
    u2 = r[2] ** (l + 1) * (1.0 + c2 * r[2] ** 2)
    return u1, u2


def _node_count(pot, r, h, l: int, shift: float, epsilon: float) -> int:
    W = 2.0 * epsilon - pot
    u1, u2 = _start_values(r, l, epsilon, shift)
    return _kernels.numerov_count(W, h, u1, u2)


def solve(geometry: Geometry, mu: float, l: int, n: int, config: OracleConfig | None = None) -> EigenResult:
    """Locate the n-th radial eigenvalue by node-count bisection.

    Hyperbolic requests above the continuum edge (2*eps >= mu) return
    ``converged=False`` rather than raising.
    """
    if n < 0 or l < 0:
        raise ConfigurationError(f"quantum numbers must be nonnegative: n={n}, l={l}")
    if geometry.curved and mu <= 0:
        raise ConfigurationError(f"mu must be positive, got {mu}")
    cfg = config or OracleConfig()
    shift = _SHIFT[geometry]

    # initial energy bracket; generous upper bounds, never the closed forms
    if geometry is Geometry.HYPERBOLIC:
        eps_hi = mu / 2.0
    elif geometry is Geometry.FLAT:
        eps_hi = float((2 * n + l + 2) ** 2 + 5)
    else:
        base = 2 * n + l + 2
        eps_hi = float(base * base + 2.0 * math.sqrt(mu) * base + 5.0)

    def make_grid(eps_ref: float, M: int):
        r_end = _outer_radius(geometry, mu, eps_ref, M)
        if cfg.r_max is not None and geometry is not Geometry.SPHERICAL:
            r_end = cfg.r_max
        r, pot = _potential_grid(geometry, mu, l, r_end, M)
        return r, pot, r[1] - r[0]

    def bisect(r, pot, h, lo, hi, tol, max_iter):
        history = []

        def K(eps):
            k = _node_count(pot, r, h, l, shift, eps)
            history.append((eps, k))
            return k

        if K(hi) < n + 1:
            return None, history
        for _ in range(max_iter):
            mid = 0.5 * (lo + hi)
            if K(mid) >= n + 1:
                hi = mid
            else:
                lo = mid
            if hi - lo < tol:
                break
        return 0.5 * (lo + hi), history

    # coarse pass fixes the truncation radius for the production pass
    r, pot, h = make_grid(eps_hi, max(cfg.grid_points // 4, 1200))
    if geometry is not Geometry.HYPERBOLIC:
        # expand the bracket until the n-th state is enclosed
        while _node_count(pot, r, h, l, shift, eps_hi) < n + 1:
            eps_hi *= 2.0
            if eps_hi > 1e12:
                raise ResolutionError("energy bracket expansion failed")
            r, pot, h = make_grid(eps_hi, max(cfg.grid_points // 4, 1200))
    eps_coarse, _ = bisect(r, pot, h, 0.0, eps_hi, max(1e-4 * eps_hi, 1e-6), cfg.max_iterations)
    if eps_coarse is None:
        return EigenResult(math.nan, -1, np.empty((0, 2)), False,
                           f"no bound state with n={n} below the continuum edge")

    r, pot, h = make_grid(eps_coarse, cfg.grid_points)
    eps, history = bisect(r, pot, h, 0.0, eps_hi, cfg.bisection_tol, cfg.max_iterations)
    if eps is None:
        return EigenResult(math.nan, -1, np.empty((0, 2)), False,
                           f"no bound state with n={n} on the production grid")

    history.sort(key=lambda t: t[0])
    counts = [k for _, k in history]
    if any(b < a for a, b in zip(counts, counts[1:])):
        raise ResolutionError("node count not monotone in energy: grid too coarse")

    u, nodes = _assemble_wavefunction(pot, r, h, l, shift, eps)
    wf = np.column_stack([r, u])
    converged = nodes == n
    message = "" if converged else f"node count {nodes} != requested n={n}"
    if geometry is Geometry.HYPERBOLIC and 2.0 * eps >= mu * (1.0 - 1e-9):
        # continuum-edge convention: states at 2*eps = mu are reported unbound
        converged = False
        message = f"state sits at the continuum edge (2*eps = {2 * eps:.9g}, mu = {mu:g})"
    return EigenResult(eps, nodes, wf, converged, message)


def _assemble_wavefunction(pot, r, h, l: int, shift: float, epsilon: float):
    """Two-sided integration matched mid-well; returns peak-normalized u and nodes."""
    M = len(r) - 1
    W = 2.0 * epsilon - pot
    allowed = np.nonzero(W[1:] > 0)[0] + 1
    m = int(0.5 * (allowed[0] + allowed[-1])) if len(allowed) else M // 2
    m = min(max(m, 2), M - 2)
    u1, u2 = _start_values(r, l, epsilon, shift)
    uf = _kernels.numerov_forward(W, h, u1, u2, m)
    ub = _kernels.numerov_backward(W, h, 0.0, 1e-100, m)
    if ub[0] == 0.0 or not np.isfinite(ub[0]):
        raise ResolutionError("backward sweep lost the decaying solution")
    u = np.concatenate([uf[:m], ub * (uf[m] / ub[0])])
    u /= np.max(np.abs(u))
    interior = u[1:]
    nodes = int(np.sum(interior[:-1] * interior[1:] < 0))
    return u, nodes
