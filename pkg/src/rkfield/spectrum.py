"""Plane-wave coefficient (wavenumber spectrum) estimation from a fitted model.

The spatial Fourier transform of each kernel atom is supported on the
sphere ``|k'| = k``, so the forward plane-wave coefficient of the model is
the finite sum::

    P_f(k theta) = (2 pi)**((d - 1)/2) k**(1 - d) sum_n a_n exp(-i k theta . r_n)

The Dirac factor of the full spectrum is not represented.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kernel import KernelSpec
from .reconstruct import FittedModel

__all__ = [
    "SpectrumEstimate",
    "direction_grid",
    "direction_angles",
    "spectrum_matrix",
    "estimate_spectrum",
    "herglotz_resynthesis",
]


def direction_grid(d: int, m=None) -> np.ndarray:
    """Unit directions on S^{d-1}.

    ``d = 1`` always gives ``[+1, -1]``. ``d = 2`` gives ``m`` equiangular
    azimuths starting at 0. ``d = 3`` takes ``m = (n_polar, n_azimuth)``
    (an int means ``(m, 2 m)``) and returns polar midpoints times equiangular
    azimuths, polar-major.
    """
    if d == 1:
        return np.array([[1.0], [-1.0]])
    if d == 2:
        m = int(m)
        if m < 1:
            raise ValueError("need at least one direction")
        phi = 2.0 * math.pi * np.arange(m) / m
        return np.column_stack([np.cos(phi), np.sin(phi)])
    if d == 3:
        n_pol, n_az = (int(m), 2 * int(m)) if np.isscalar(m) else (int(m[0]), int(m[1]))
        if n_pol < 1 or n_az < 1:
            raise ValueError("need at least one direction")
        pol = math.pi * (np.arange(n_pol) + 0.5) / n_pol
        az = 2.0 * math.pi * np.arange(n_az) / n_az
        P, A = np.meshgrid(pol, az, indexing="ij")
        return np.column_stack(
            [(np.sin(P) * np.cos(A)).ravel(), (np.sin(P) * np.sin(A)).ravel(), np.cos(P).ravel()]
        )
    raise ValueError(f"direction grids support d in (1, 2, 3), got {d}")


def direction_angles(directions: np.ndarray) -> np.ndarray:
    """Angles in degrees: azimuth in [0, 360) for d = 2, (polar, azimuth) columns for d = 3."""
    u = np.asarray(directions, dtype=float)
    if u.shape[1] == 1:
        return np.where(u[:, 0] > 0, 0.0, 180.0)
    az = np.round(np.degrees(np.arctan2(u[:, 1], u[:, 0])), 10) % 360.0
    if u.shape[1] == 2:
        return az
    pol = np.round(np.degrees(np.arccos(np.clip(u[:, 2], -1.0, 1.0))), 10)
    return np.column_stack([pol, az])


@dataclass(frozen=True)
class SpectrumEstimate:
    directions: np.ndarray
    values: np.ndarray = field(repr=False)
    spec: KernelSpec

    def __post_init__(self):
        u = np.asarray(self.directions, dtype=float)
        if u.ndim != 2 or u.shape[0] < 1:
            raise ValueError("need at least one direction")
        if np.any(np.abs(np.linalg.norm(u, axis=1) - 1.0) > 1e-12):
            raise ValueError("directions must have unit norm")

    @property
    def angles_deg(self) -> np.ndarray:
        return direction_angles(self.directions)

    def peak(self):
        """Index and value of the direction with the largest real part."""
        i = int(np.argmax(self.values.real))
        return i, complex(self.values[i])


def spectrum_matrix(spec: KernelSpec, directions, centers) -> np.ndarray:
    """``L[i, j] = (2 pi)**((d-1)/2) k**(1-d) exp(-i k theta_i . r_j)``."""
    u = np.asarray(directions, dtype=float)
    x = np.asarray(centers, dtype=float)
    if u.shape[1] != spec.d or x.shape[1] != spec.d:
        raise ValueError("directions and centers must match the kernel dimension")
    pref = (2.0 * math.pi) ** ((spec.d - 1) / 2.0) * spec.k ** (1 - spec.d)
    return pref * np.exp(-1j * spec.k * (u @ x.T))


def estimate_spectrum(model: FittedModel, directions) -> SpectrumEstimate:
    """Forward plane-wave coefficients of ``model`` along ``directions``."""
    u = np.asarray(directions, dtype=float)
    if u.ndim == 1:
        u = u[None, :]
    values = spectrum_matrix(model.spec, u, model.centers) @ model.coefficients
    return SpectrumEstimate(u, values, model.spec)


def _sphere_weights(directions: np.ndarray) -> np.ndarray:
    """Quadrature weights for a grid produced by :func:`direction_grid`."""
    n, d = directions.shape
    if d == 1:
        return np.ones(n)
    if d == 2:
        return np.full(n, 2.0 * math.pi / n)
    pol = np.arccos(np.clip(directions[:, 2], -1.0, 1.0))
    n_pol = np.unique(np.round(pol, 12)).size
    n_az = n // n_pol
    return np.sin(pol) * (math.pi / n_pol) * (2.0 * math.pi / n_az)


def herglotz_resynthesis(estimate: SpectrumEstimate, query_points) -> np.ndarray:
    """Field rebuilt from the estimated coefficients by quadrature over directions.

    Uses ``p(r) = int P~(k theta) exp(i k theta . r) dtheta`` with
    ``P~ = (2 pi)**(-(d-1)/2) k**(d-1) P_f``; the direction set must come
    from :func:`direction_grid`.
    """
    spec = estimate.spec
    q = np.asarray(query_points, dtype=float)
    u = estimate.directions
    scaled = (2.0 * math.pi) ** (-(spec.d - 1) / 2.0) * spec.k ** (spec.d - 1) * estimate.values
    w = _sphere_weights(u)
    return np.exp(1j * spec.k * (q @ u.T)) @ (w * scaled)
