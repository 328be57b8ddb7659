import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscspec import DeltaKind, DenominatorKind, Geometry, Scheme, build, build_field, delta, pi_squared
from oscspec.errors import PoleEvaluationError


def test_build_hyperbolic_naive_values():
    c = build(Geometry.HYPERBOLIC, 30.0, 0, 7.5, Scheme.NAIVE)
    assert (c.A, c.B, c.C) == (-30.0, 14.25, -0.25)
    assert c.alpha == 0.0 and c.beta == 0.0


def test_build_hyperbolic_corrected_values():
    c = build(Geometry.HYPERBOLIC, 30.0, 0, 7.5, Scheme.CORRECTED)
    assert (c.A, c.B, c.C) == (-30.25, 14.5, -0.25)
    assert (c.alpha, c.beta) == (-0.25, 0.25)


def test_build_spherical_naive_values():
    c = build(Geometry.SPHERICAL, 30.0, 1, 16.5, Scheme.NAIVE)
    assert (c.A, c.B, c.C) == (-30.0, 31.75, -2.25)


def test_flat_corrected_is_noop():
    naive = build(Geometry.FLAT, 0.0, 1, 2.5, Scheme.NAIVE)
    corr = build(Geometry.FLAT, 0.0, 1, 2.5, Scheme.CORRECTED)
    assert (corr.A, corr.B, corr.C) == (naive.A, naive.B, naive.C)
    assert corr.is_noop_correction
    assert not naive.is_noop_correction


@pytest.mark.parametrize("geometry", [Geometry.HYPERBOLIC, Geometry.SPHERICAL])
def test_scheme_difference_identity(geometry):
    sign = +1.0 if geometry is Geometry.HYPERBOLIC else -1.0
    for mu, l, eps in [(5.0, 0, 2.0), (30.0, 1, 11.0), (100.0, 2, 40.0)]:
        a = build(geometry, mu, l, eps, Scheme.NAIVE)
        c = build(geometry, mu, l, eps, Scheme.CORRECTED)
        assert c.A - a.A == -0.25
        assert c.B - a.B == sign * 0.25
        assert c.C == a.C


def test_denominator_and_delta_kinds():
    f = build_field(Geometry.FLAT, 0.0, 0, 1.5, Scheme.NAIVE)
    assert f.denominator_kind is DenominatorKind.ONE and f.delta_kind is DeltaKind.NONE
    f = build_field(Geometry.HYPERBOLIC, 30.0, 0, 7.5, Scheme.CORRECTED)
    assert f.denominator_kind is DenominatorKind.ONE_MINUS_Z2_SQ
    assert f.delta_kind is DeltaKind.HYPERBOLIC_CORRECTED
    f = build_field(Geometry.SPHERICAL, 30.0, 0, 9.0, Scheme.NAIVE)
    assert f.denominator_kind is DenominatorKind.ONE_PLUS_Z2_SQ
    assert f.delta_kind is DeltaKind.SPHERICAL_NAIVE


def test_pi_squared_at_origin_is_C():
    for geometry, mu, eps in [(Geometry.FLAT, 0.0, 1.5), (Geometry.HYPERBOLIC, 30.0, 7.5),
                              (Geometry.SPHERICAL, 30.0, 9.0)]:
        f = build_field(geometry, mu, 1, eps, Scheme.NAIVE)
        assert pi_squared(f, 0.0 + 0.0j) == pytest.approx(f.coefficients.C, rel=1e-15)


def test_pi_squared_vanishes_at_turning_points():
    f = build_field(Geometry.FLAT, 0.0, 0, 1.5, Scheme.NAIVE)  # A=-1, B=3, C=-0.25
    for root in (math.sqrt((3 + math.sqrt(8)) / 2), math.sqrt((3 - math.sqrt(8)) / 2)):
        assert abs(pi_squared(f, complex(root))) < 1e-13


def test_pi_squared_hand_value():
    # hyperbolic naive mu=30, l=0, eps=7.5 at z=0.5:
    # (-30/16 + 14.25/4 - 1/4) / (3/4)^2 = (23/16)/(9/16) = 23/9
    f = build_field(Geometry.HYPERBOLIC, 30.0, 0, 7.5, Scheme.NAIVE)
    assert pi_squared(f, 0.5 + 0.0j) == pytest.approx(23.0 / 9.0, rel=1e-14)


def test_pole_evaluation_raises():
    f = build_field(Geometry.HYPERBOLIC, 30.0, 0, 7.5, Scheme.NAIVE)
    with pytest.raises(PoleEvaluationError):
        pi_squared(f, 1.0 + 0.0j)
    f = build_field(Geometry.SPHERICAL, 30.0, 0, 9.0, Scheme.NAIVE)
    with pytest.raises(PoleEvaluationError):
        delta(f, 1j)


def test_delta_examples():
    h_naive = build_field(Geometry.HYPERBOLIC, 30.0, 0, 7.5, Scheme.NAIVE)
    assert delta(h_naive, 0.0 + 0.0j) == 0.0
    s_naive = build_field(Geometry.SPHERICAL, 30.0, 0, 9.0, Scheme.NAIVE)
    assert delta(s_naive, 0.5 + 0.0j) == pytest.approx(-0.21, rel=1e-14)
    # the corrected correction terms carry a z^2 factor and vanish at z = 0,
    # as forced by the scheme-consistency identity
    h_corr = build_field(Geometry.HYPERBOLIC, 30.0, 0, 7.5, Scheme.CORRECTED)
    assert delta(h_corr, 0.0 + 0.0j) == 0.0
    s_corr = build_field(Geometry.SPHERICAL, 30.0, 0, 9.0, Scheme.CORRECTED)
    assert delta(s_corr, 0.0 + 0.0j) == 0.0


@pytest.mark.parametrize("geometry,mu", [(Geometry.HYPERBOLIC, 30.0), (Geometry.SPHERICAL, 30.0),
                                         (Geometry.HYPERBOLIC, 5.0), (Geometry.SPHERICAL, 5.0)])
def test_parity_in_z(geometry, mu):
    f = build_field(geometry, mu, 1, 0.4 * mu, Scheme.NAIVE)
    zs = np.array([0.3 + 0.2j, -0.3 - 0.2j, 1.7j, 0.05 - 2.0j])
    assert np.allclose(pi_squared(f, zs), pi_squared(f, -zs), rtol=1e-14)
    assert np.allclose(delta(f, zs), delta(f, -zs), rtol=1e-14)


@settings(deadline=None)
@given(
    geometry=st.sampled_from([Geometry.HYPERBOLIC, Geometry.SPHERICAL]),
    mu=st.floats(0.5, 200.0),
    l=st.integers(0, 4),
    eps=st.floats(0.1, 80.0),
    r=st.floats(0.05, 3.0),
    th=st.floats(0.15, math.pi - 0.15),
)
def test_scheme_consistency_identity(geometry, mu, l, eps, r, th):
    # Pi^2_naive + Delta_naive == Pi^2_corrected + Delta_corrected off the poles:
    # the rearrangement moves terms without changing the equation
    z = r * complex(math.cos(th), math.sin(th))
    fn = build_field(geometry, mu, l, eps, Scheme.NAIVE)
    fc = build_field(geometry, mu, l, eps, Scheme.CORRECTED)
    lhs = pi_squared(fn, z) + delta(fn, z)
    rhs = pi_squared(fc, z) + delta(fc, z)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
