import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscspec import (
    Geometry,
    ModelParams,
    QuantumNumbers,
    exact_epsilon,
    flat_limit_energy,
    from_dimensionless,
    to_dimensionless,
)
from oscspec.errors import ConfigurationError


def test_geometry_curvature_signs():
    assert Geometry.FLAT.curvature_sign == 0
    assert Geometry.HYPERBOLIC.curvature_sign == -1
    assert Geometry.SPHERICAL.curvature_sign == +1


def test_quantum_numbers_are_exact_rationals():
    qn = QuantumNumbers(1, 2)
    assert qn.N == Fraction(11, 2)
    assert qn.L == Fraction(5, 2)
    assert qn.L2 == Fraction(25, 4)
    assert qn.L2 >= Fraction(1, 4)


def test_negative_quantum_numbers_rejected():
    with pytest.raises(ConfigurationError):
        QuantumNumbers(-1, 0)
    with pytest.raises(ConfigurationError):
        QuantumNumbers(0, -2)


@pytest.mark.parametrize("n,l", [(1, 0), (2, 1), (3, 4)])
def test_n_degeneracy_data_rule(n, l):
    a = QuantumNumbers(n, l)
    b = QuantumNumbers(n - 1, l + 2)
    assert a.N == b.N
    assert a.L2 != b.L2


def test_model_params_consistency_check():
    ModelParams.from_physical(M=2.0, k=3.0, rho=1.5, hbar=1.0)
    with pytest.raises(ConfigurationError):
        ModelParams(mu=10.0, M=1.0, k=1.0, rho=1.0)  # M*k*rho^4 = 1 != 10
    with pytest.raises(ConfigurationError):
        ModelParams(mu=-1.0)


def test_to_dimensionless_examples():
    # flat: eps is E in units of hbar*sqrt(k/M)
    p = ModelParams.from_physical(M=2.0, k=8.0, rho=1.0)
    assert to_dimensionless(1.5 * math.sqrt(8.0 / 2.0), p, Geometry.FLAT) == pytest.approx(1.5, rel=1e-14)
    # curved with all scales 1
    p1 = ModelParams.from_physical(M=1.0, k=1.0, rho=1.0)
    assert to_dimensionless(7.5, p1, Geometry.HYPERBOLIC) == 7.5
    # hyperbolic, M=1, rho=2: eps = M E rho^2 = 1.875 * 4 = 7.5
    p2 = ModelParams.from_physical(M=1.0, k=1.0, rho=2.0)
    assert to_dimensionless(1.875, p2, Geometry.HYPERBOLIC) == pytest.approx(7.5, rel=1e-14)


def test_missing_physical_block_raises():
    p = ModelParams(mu=30.0)
    with pytest.raises(ConfigurationError):
        to_dimensionless(1.0, p, Geometry.HYPERBOLIC)
    with pytest.raises(ConfigurationError):
        from_dimensionless(1.0, p, Geometry.FLAT)


@settings(deadline=None)
@given(
    M=st.floats(0.1, 10), k=st.floats(0.1, 10), rho=st.floats(0.1, 5),
    hbar=st.floats(0.5, 2), E=st.floats(-20, 20),
    geometry=st.sampled_from(list(Geometry)),
)
def test_unit_round_trip(M, k, rho, hbar, E, geometry):
    p = ModelParams.from_physical(M=M, k=k, rho=rho, hbar=hbar)
    back = from_dimensionless(to_dimensionless(E, p, geometry), p, geometry)
    assert back == pytest.approx(E, rel=1e-12, abs=1e-12)


def test_flat_limit_energy_examples():
    assert flat_limit_energy(7.5, 30.0) == pytest.approx(7.5 / math.sqrt(30.0), rel=1e-14)
    # exact cancellation
    for mu in (0.7, 12.0, 4096.0):
        assert flat_limit_energy(2.5 * math.sqrt(mu), mu) == pytest.approx(2.5, rel=1e-14)
    # large-mu hyperbolic ground state approaches N = 1.5
    eps = exact_epsilon(Geometry.HYPERBOLIC, 1e6, QuantumNumbers(0, 0)).epsilon
    assert abs(flat_limit_energy(eps, 1e6) - 1.5) < 1e-3


@pytest.mark.parametrize("mu", [1e4, 1e5, 1e6, 1e8])
@pytest.mark.parametrize("n,l", [(n, l) for n in range(3) for l in range(3)])
def test_flat_limit_convergence_bound(mu, n, l):
    # |eps/sqrt(mu) - N| <= 1.1 |N^2 - 3/4| / (2 sqrt(mu)) for the hyperbolic spectrum
    qn = QuantumNumbers(n, l)
    N = float(qn.N)
    eps = exact_epsilon(Geometry.HYPERBOLIC, mu, qn).epsilon
    lhs = abs(eps / math.sqrt(mu) - N)
    assert lhs <= 1.1 * abs(N * N - 0.75) / (2.0 * math.sqrt(mu))
