import math

import numpy as np
import pytest

from rkfield.scenario import (
    SampleSet,
    Scenario,
    add_noise,
    direction_from_angles,
    plane_wave_pressure,
    sample_positions_grid,
    sample_positions_uniform_square,
)

# exp(i k (cos45 * 0.1 + sin45 * 0.1)), k = 2 pi 2000 / 343, 40-digit evaluation
FIXTURE_RE = 0.45183000539160278666
FIXTURE_IM = -0.89210405571761873744


def test_plane_wave_at_origin():
    s = Scenario.from_angle(2000.0, 30.0)
    assert plane_wave_pressure(s, [0.0, 0.0]) == 1 + 0j


def test_plane_wave_half_turn():
    s = Scenario(343.0 / 2.0, (1.0, 0.0))  # k = pi
    p = plane_wave_pressure(s, [1.0, 0.0])
    assert p.real == pytest.approx(-1.0, abs=1e-15)
    assert abs(p.imag) < 1e-15


def test_plane_wave_regression_fixture():
    s = Scenario.from_angle(2000.0, 45.0)
    p = plane_wave_pressure(s, [0.1, 0.1])
    assert p.real == pytest.approx(FIXTURE_RE, abs=1e-13)
    assert p.imag == pytest.approx(FIXTURE_IM, abs=1e-13)


def test_plane_wave_unit_modulus(rng):
    s = Scenario.from_angle(1234.0, 100.0, amplitude=0.3 - 0.4j)
    p = plane_wave_pressure(s, rng.uniform(-3, 3, (50, 2)))
    np.testing.assert_allclose(np.abs(p), 0.5, rtol=1e-14)


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(100.0, (1.0, 1.0))
    with pytest.raises(ValueError):
        Scenario(-1.0, (1.0, 0.0))
    assert Scenario.from_angle(2000.0, 45.0).wavenumber == pytest.approx(2 * math.pi * 2000 / 343)


def test_directions():
    np.testing.assert_allclose(direction_from_angles(2, 45.0), [math.sqrt(0.5)] * 2, rtol=1e-15)
    assert direction_from_angles(1, 180.0)[0] == -1.0
    assert np.linalg.norm(direction_from_angles(3, 20.0, 70.0)) == pytest.approx(1.0, abs=1e-15)


def test_positions_in_square():
    pos = sample_positions_uniform_square(0.4, 21, seed=7)
    assert pos.shape == (21, 2)
    assert np.all(np.abs(pos) <= 0.2)


def test_positions_deterministic():
    a = sample_positions_uniform_square(0.4, 1, seed=3)
    b = sample_positions_uniform_square(0.4, 1, seed=3)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, sample_positions_uniform_square(0.4, 1, seed=4))


def test_positions_mean_near_origin():
    # 0.01 * side is a 3.5 sigma bound per coordinate at n = 10**4
    side = 2.0
    pos = sample_positions_uniform_square(side, 10_000, seed=11)
    assert np.all(np.abs(pos.mean(axis=0)) <= 0.01 * side)


def test_grid_layout():
    pos = sample_positions_grid(0.4, 81)
    assert pos.shape == (81, 2)
    assert pos.min() == -0.2 and pos.max() == 0.2
    with pytest.raises(ValueError):
        sample_positions_grid(0.4, 80)


def test_no_noise_sentinel():
    p = np.exp(1j * np.arange(5.0))
    np.testing.assert_array_equal(add_noise(p, None, 1), p)
    np.testing.assert_array_equal(add_noise(p, math.inf, 1), p)


def test_noise_variance_monte_carlo():
    p = np.exp(1j * np.linspace(0, 50, 100_000))
    noise = add_noise(p, 30.0, seed=5) - p
    var = np.mean(np.abs(noise) ** 2)
    assert abs(var / 1e-3 - 1.0) <= 0.05


def test_noise_zero_mean():
    n = 20_000
    p = np.ones(n, dtype=complex)
    noise = add_noise(p, 10.0, seed=9) - p
    sigma = math.sqrt(0.1)
    assert abs(noise.mean()) <= 3 * sigma / math.sqrt(n)


def test_noise_deterministic():
    p = np.ones(10, dtype=complex)
    np.testing.assert_array_equal(add_noise(p, 20.0, 1), add_noise(p, 20.0, 1))


def test_noise_of_zero_signal():
    with pytest.raises(ValueError):
        add_noise(np.zeros(4), 30.0, 0)


def test_sample_set_validation():
    with pytest.raises(ValueError):
        SampleSet(np.zeros((3, 2)), np.zeros(2))
    s = SampleSet(np.array([[0.0, 0.0], [0.0, 0.0]]), [1, 2])
    assert s.has_duplicates() and len(s) == 2 and s.d == 2
