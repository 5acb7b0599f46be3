import math

import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from rkfield.specfun import (
    DomainError,
    SERIES_SWITCH,
    bessel_j,
    bessel_j_asymptotic,
    bessel_j_scaled,
    bessel_j_series,
    gamma_half_integer,
    spherical_bessel_j,
    spherical_bessel_j_scaled,
)

# 60-term power series summed with mpmath at 40 digits
J0_AT_1 = 0.76519768655796655145
# (3/z**3 - 1/z) sin z - (3/z**2) cos z at z = 1, 40 digits
SPH_J2_AT_1 = 0.062035052011373861102

Z = np.linspace(1e-3, 50.0, 5001)


def local_scale(nu, z):
    # J_nu and J_{nu+1} never vanish together
    return np.maximum(np.abs(sc.jv(nu, z)), np.abs(sc.jv(nu + 1, z)))


def test_j0_at_origin():
    assert bessel_j(0, 0.0) == 1.0


def test_j_minus_half_at_half_pi():
    assert abs(bessel_j(-0.5, math.pi / 2)) < 1e-16


def test_j0_against_series_oracle():
    assert bessel_j(0, 1.0) == pytest.approx(J0_AT_1, rel=1e-14)


@pytest.mark.parametrize("nu", [0.5, 1.0, 1.5, 2.0, 3.0])
def test_limit_at_origin_zero_for_positive_orders(nu):
    assert bessel_j(nu, 0.0) == 0.0


def test_pole_of_j_minus_half():
    with pytest.raises(DomainError):
        bessel_j(-0.5, 0.0)


@pytest.mark.parametrize("nu", [-1.0, 0.25, 1.3])
def test_bad_order(nu):
    with pytest.raises(DomainError):
        bessel_j(nu, 1.0)


def test_negative_argument():
    with pytest.raises(DomainError):
        bessel_j(0, -1.0)


def test_spherical_sinc_limit():
    assert spherical_bessel_j(0, 0.0) == 1.0
    assert spherical_bessel_j(0, 1e-20) == 1.0


def test_spherical_zero_at_pi():
    assert abs(spherical_bessel_j(0, math.pi)) < 1e-16


def test_spherical_j2_closed_form():
    assert spherical_bessel_j(2, 1.0) == pytest.approx(SPH_J2_AT_1, rel=1e-13)


def test_spherical_minus_one():
    z = np.array([0.3, 1.0, 7.5])
    np.testing.assert_allclose(spherical_bessel_j(-1, z), np.cos(z) / z, rtol=1e-15)
    with pytest.raises(DomainError):
        spherical_bessel_j(-1, 0.0)


def test_gamma_base_cases():
    assert gamma_half_integer(1) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma_half_integer(2) == 1.0
    assert gamma_half_integer(5) == pytest.approx(3 * math.sqrt(math.pi) / 4, rel=1e-15)


@given(st.integers(min_value=1, max_value=80))
def test_gamma_matches_math_gamma(m):
    assert gamma_half_integer(m) == pytest.approx(math.gamma(m / 2), rel=1e-13)


def test_gamma_rejects_nonpositive():
    with pytest.raises(DomainError):
        gamma_half_integer(0)


@pytest.mark.parametrize("nu", [0, 1, 2, 3, 5, 10, 14, 20, 30])
def test_integer_orders_against_scipy(nu):
    np.testing.assert_allclose(bessel_j(nu, Z), sc.jv(nu, Z), rtol=0, atol=3e-12)


@pytest.mark.parametrize("nu", [-0.5, 0.5, 1.5, 2.5, 4.5, 9.5, 20.5])
def test_half_integer_orders_against_scipy(nu):
    np.testing.assert_allclose(bessel_j(nu, Z), sc.jv(nu, Z), rtol=0, atol=1e-13)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 8, 25])
def test_spherical_against_scipy(n):
    z = np.concatenate([[0.0], Z])
    np.testing.assert_allclose(spherical_bessel_j(n, z), sc.spherical_jn(n, z), rtol=0, atol=1e-13)


@pytest.mark.parametrize("nu", [0.5, 1.5, 2.5, 3.5, 4.5])
def test_closed_form_matches_generic_path(nu):
    z = np.linspace(0.01, 50.0, 4000)
    generic = np.where(
        z <= SERIES_SWITCH,
        bessel_j_series(nu, np.minimum(z, SERIES_SWITCH)),
        bessel_j_asymptotic(nu, z),
    )
    err = np.abs(bessel_j(nu, z) - generic) / local_scale(nu, z)
    assert err.max() <= 1e-10


@pytest.mark.parametrize("nu", [0.5, 1.0, 1.5, 2.0, 3.0, 4.5, 7.0])
def test_three_term_recurrence(nu):
    z = np.linspace(0.05, 50.0, 3000)
    lhs = bessel_j(nu - 1, z) + bessel_j(nu + 1, z)
    rhs = 2 * nu / z * bessel_j(nu, z)
    scale = np.maximum(local_scale(nu, z), np.abs(rhs))
    assert (np.abs(lhs - rhs) / scale).max() <= 1e-9


@pytest.mark.parametrize("n", [-1, 0, 1, 2, 3])
def test_spherical_cylindrical_relation(n):
    z = np.linspace(0.01, 50.0, 3000)
    a = spherical_bessel_j(n, z)
    b = np.sqrt(np.pi / (2 * z)) * bessel_j(n + 0.5, z)
    scale = np.maximum(np.abs(a), np.abs(spherical_bessel_j(n + 1, z)))
    assert (np.abs(a - b) / scale).max() <= 1e-10


@pytest.mark.parametrize("nu", [-0.5, 0.0, 0.5, 1.0, 2.5])
def test_scaled_entry_at_origin(nu):
    expected = 1.0 / (2**nu * math.gamma(nu + 1))
    assert bessel_j_scaled(nu, 0.0) == pytest.approx(expected, rel=1e-15)


@settings(max_examples=50)
@given(st.sampled_from([0.0, 0.5, 1.0, 1.5, 3.0]), st.floats(1e-3, 10.0))
def test_scaled_entry_consistent(nu, z):
    assert bessel_j_scaled(nu, z) * z**nu == pytest.approx(bessel_j(nu, z), abs=1e-12)


@pytest.mark.parametrize("n", [-1, 0, 1, 4])
def test_spherical_scaled(n):
    z = np.array([1e-8, 0.1, 1.5])
    expected = sc.spherical_jn(n, z) / z**n if n >= 0 else np.cos(z)
    np.testing.assert_allclose(spherical_bessel_j_scaled(n, z), expected, rtol=1e-12)


def test_scalar_in_scalar_out():
    assert isinstance(bessel_j(1, 2.0), float)
    assert bessel_j(1, np.array([2.0])).shape == (1,)
