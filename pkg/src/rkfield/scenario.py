"""Ground-truth plane-wave fields, sampling geometries and noisy observations."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Scenario",
    "SampleSet",
    "direction_from_angles",
    "plane_wave_pressure",
    "sample_positions_uniform_square",
    "sample_positions_grid",
    "add_noise",
    "rng_for",
]

# per-operation RNG stream tags
_POSITIONS = 1
_NOISE = 2


def rng_for(seed: int, tag: int) -> np.random.Generator:
    """Independent generator for the stream ``(seed, tag)``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(tag)]))


def direction_from_angles(d: int, azimuth_deg: float = 0.0, polar_deg: float = 90.0):
    """Unit propagation vector from angles in degrees.

    d = 1 maps the azimuth to +1 (|azimuth| < 90) or -1; d = 2 uses the
    azimuth only; d = 3 uses azimuth and polar angle (90 deg = in-plane).
    """
    az = math.radians(azimuth_deg)
    if d == 1:
        return np.array([1.0 if math.cos(az) >= 0 else -1.0])
    if d == 2:
        return np.array([math.cos(az), math.sin(az)])
    if d == 3:
        pol = math.radians(polar_deg)
        return np.array(
            [math.sin(pol) * math.cos(az), math.sin(pol) * math.sin(az), math.cos(pol)]
        )
    raise ValueError(f"angles are only defined for d in (1, 2, 3), got {d}")


@dataclass(frozen=True)
class Scenario:
    """A single plane wave ``amplitude * exp(i k direction . r)``."""

    frequency: float
    direction: tuple
    amplitude: complex = 1.0 + 0.0j
    sound_speed: float = 343.0

    def __post_init__(self):
        u = np.asarray(self.direction, dtype=float).ravel()
        if self.frequency <= 0 or self.sound_speed <= 0:
            raise ValueError("frequency and sound speed must be positive")
        if abs(float(np.linalg.norm(u)) - 1.0) > 1e-12:
            raise ValueError("direction must be a unit vector")
        object.__setattr__(self, "direction", tuple(float(c) for c in u))
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    @classmethod
    def from_angle(cls, frequency, angle_deg, d=2, amplitude=1.0, sound_speed=343.0):
        return cls(frequency, tuple(direction_from_angles(d, angle_deg)), amplitude, sound_speed)

    @property
    def d(self) -> int:
        return len(self.direction)

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi * self.frequency / self.sound_speed


@dataclass(frozen=True)
class SampleSet:
    """Sampling positions (N, d) in metres with their complex pressures (N,)."""

    positions: np.ndarray
    pressures: np.ndarray = field(repr=False)

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim == 1:
            pos = pos[:, None]
        p = np.asarray(self.pressures, dtype=complex).ravel()
        if pos.shape[0] < 1 or pos.shape[0] != p.shape[0]:
            raise ValueError(
                f"need N >= 1 positions matching N pressures, got {pos.shape[0]} and {p.shape[0]}"
            )
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "pressures", p)

    @property
    def d(self) -> int:
        return self.positions.shape[1]

    def __len__(self):
        return self.positions.shape[0]

    def has_duplicates(self) -> bool:
        return np.unique(self.positions, axis=0).shape[0] < len(self)


def plane_wave_pressure(s: Scenario, r):
    """Pressure of the plane wave at a point ``(d,)`` or points ``(M, d)``."""
    r = np.asarray(r, dtype=float)
    u = np.asarray(s.direction)
    if r.shape[-1] != s.d:
        raise ValueError(f"points have dimension {r.shape[-1]}, expected {s.d}")
    out = s.amplitude * np.exp(1j * s.wavenumber * (r @ u))
    return complex(out) if r.ndim == 1 else out


def sample_positions_uniform_square(side: float, n: int, seed: int) -> np.ndarray:
    """``n`` i.i.d. uniform points on the square ``[-side/2, side/2]**2``."""
    if side <= 0 or n < 1:
        raise ValueError("need side > 0 and n >= 1")
    rng = rng_for(seed, _POSITIONS)
    return rng.uniform(-side / 2.0, side / 2.0, size=(int(n), 2))


def sample_positions_grid(side: float, n: int) -> np.ndarray:
    """Square lattice of ``n`` points (a perfect square) spanning the square, edges included."""
    m = math.isqrt(int(n))
    if side <= 0 or m < 1 or m * m != n:
        raise ValueError("grid layout needs side > 0 and a perfect-square point count")
    if m == 1:
        return np.zeros((1, 2))
    g = np.linspace(-side / 2.0, side / 2.0, m)
    x, y = np.meshgrid(g, g)
    return np.column_stack([x.ravel(), y.ravel()])


def add_noise(pressures, snr_db, seed: int) -> np.ndarray:
    """Add circular complex Gaussian noise at the given SNR (dB).

    The noise variance per sample is ``mean(|p|**2) / 10**(snr_db / 10)``.
    ``snr_db`` of ``None`` or ``inf`` returns an unchanged copy.
    """
    p = np.asarray(pressures, dtype=complex)
    if snr_db is None or math.isinf(snr_db):
        return p.copy()
    power = float(np.mean(np.abs(p) ** 2))
    if power == 0.0:
        raise ValueError("SNR is undefined for an all-zero signal")
    sigma2 = power / 10.0 ** (snr_db / 10.0)
    rng = rng_for(seed, _NOISE)
    noise = rng.standard_normal(p.shape) + 1j * rng.standard_normal(p.shape)
    return p + math.sqrt(sigma2 / 2.0) * noise
