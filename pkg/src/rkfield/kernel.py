"""Reproducing kernel of the space of fields band-limited to a wavenumber sphere.

For dimension ``d`` and wavenumber ``k`` the kernel only depends on the
distance ``rho = |r - r'|``::

    kappa(rho) = 2 pi (2 pi / (k rho))**(d/2 - 1) J_{d/2-1}(k rho)

which equals the integral of ``exp(i k theta . (r - r'))`` over the unit
sphere ``S^{d-1}``. Its value at ``rho = 0`` is the sphere area
``2 pi**(d/2) / Gamma(d/2)``; in one dimension it reduces to
``2 cos(k (x - x'))``.

Kernel values are treated as dimensionless.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import (
    bessel_j,
    bessel_j_scaled,
    gamma_half_integer,
    spherical_bessel_j,
    spherical_bessel_j_scaled,
)

__all__ = [
    "KernelSpec",
    "sphere_area",
    "pairwise_distance",
    "kernel_from_distance",
    "kernel_bessel_form",
    "kernel_spherical_form",
    "kernel_matrix",
    "kernel_eval",
    "kernel_eval_odd",
    "kernel_oracle_quadrature",
    "NEAR_COINCIDENCE",
]

#: below this value of k*rho the series form J_nu(z)/z**nu is used
NEAR_COINCIDENCE = 1e-6


@dataclass(frozen=True)
class KernelSpec:
    """Dimension ``d`` and wavenumber ``k`` (rad/m) of one kernel space."""

    d: int
    k: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension must be an integer >= 1, got {self.d!r}")
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValueError(f"wavenumber must be positive and finite, got {self.k!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "k", float(self.k))

    @classmethod
    def from_frequency(cls, d: int, frequency: float, sound_speed: float = 343.0):
        if frequency <= 0 or sound_speed <= 0:
            raise ValueError("frequency and sound speed must be positive")
        return cls(d, 2.0 * math.pi * frequency / sound_speed)

    @property
    def order(self) -> float:
        """Bessel order d/2 - 1."""
        return self.d / 2.0 - 1.0

    @property
    def coincidence_value(self) -> float:
        return sphere_area(self.d)


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere S^{d-1} in R^d (2 for d = 1)."""
    if d % 2 == 0:
        return 2.0 * math.pi ** (d // 2) / gamma_half_integer(d)
    # sqrt(pi) cancels against Gamma(d/2) = sqrt(pi) * (1/2)(3/2)...((d-2)/2)
    rest = 1.0
    x = 0.5
    while x < d / 2.0:
        rest *= x
        x += 1.0
    return 2.0 * math.pi ** ((d - 1) // 2) / rest


def _points(x, d: int) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1) if d == 1 and arr.shape[0] != 1 else arr.reshape(1, -1)
    if arr.shape[-1] != d:
        raise ValueError(f"points have dimension {arr.shape[-1]}, expected {d}")
    return arr


def pairwise_distance(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Euclidean distances between rows of ``x`` (M, d) and ``y`` (N, d)."""
    diff = x[:, None, :] - y[None, :, :]
    return np.sqrt(np.einsum("mnd,mnd->mn", diff, diff))


def kernel_bessel_form(spec: KernelSpec, rho):
    """Cylindrical-Bessel form of the kernel, valid for every d.

    No one-dimensional special case: d = 1 goes through J_{-1/2}, so
    ``rho = 0`` is only handled for d >= 2.
    """
    rho = np.asarray(rho, dtype=float)
    z = spec.k * rho
    nu = spec.order
    pref = 2.0 * math.pi * (2.0 * math.pi) ** nu
    if spec.d == 1:
        # (2 pi / z)**(-1/2) J_{-1/2}(z); the pole of J cancels against z**(1/2)
        return 2.0 * math.pi * np.sqrt(z / (2.0 * math.pi)) * bessel_j(nu, z)
    out = np.empty_like(z)
    near = z < NEAR_COINCIDENCE
    out[near] = pref * bessel_j_scaled(nu, z[near])
    far = ~near
    if nu == 0:
        out[far] = pref * bessel_j(0.0, z[far])
    else:
        zf = z[far]
        out[far] = pref * bessel_j(nu, zf) / zf**nu
    return out


def kernel_spherical_form(spec: KernelSpec, rho):
    """Spherical-Bessel form ``4 pi (2 pi / z)**n j_n(z)``, ``n = (d - 3)/2``, odd d."""
    if spec.d % 2 == 0:
        raise ValueError("the spherical-Bessel form needs an odd dimension")
    n = (spec.d - 3) // 2
    rho = np.asarray(rho, dtype=float)
    z = spec.k * rho
    pref = 4.0 * math.pi * (2.0 * math.pi) ** n
    out = np.empty_like(z)
    near = z < NEAR_COINCIDENCE
    out[near] = pref * spherical_bessel_j_scaled(n, z[near])
    far = ~near
    zf = z[far]
    out[far] = pref * spherical_bessel_j(n, zf) / zf**n
    return out


def kernel_from_distance(spec: KernelSpec, rho):
    """Kernel value as a function of the separation ``rho`` (array-valued)."""
    scalar = np.ndim(rho) == 0
    rho = np.asarray(rho, dtype=float)
    if spec.d == 1:
        out = 2.0 * np.cos(spec.k * rho)
    else:
        out = kernel_bessel_form(spec, rho)
        # exact coincidence value rather than the truncated series
        out = np.where(rho == 0, spec.coincidence_value, out)
    return float(out) if scalar else out


def kernel_matrix(spec: KernelSpec, x, y) -> np.ndarray:
    """Matrix of kernel values between point sets ``x`` (M, d) and ``y`` (N, d)."""
    x = _points(x, spec.d)
    y = _points(y, spec.d)
    return kernel_from_distance(spec, pairwise_distance(x, y))


def _pair(spec: KernelSpec, r, r_prime) -> float:
    r = np.atleast_1d(np.asarray(r, dtype=float))
    r_prime = np.atleast_1d(np.asarray(r_prime, dtype=float))
    if r.shape != (spec.d,) or r_prime.shape != (spec.d,):
        raise ValueError(
            f"points must have {spec.d} coordinates, got {r.shape} and {r_prime.shape}"
        )
    diff = r - r_prime
    return float(math.sqrt(float(diff @ diff)))


def kernel_eval(spec: KernelSpec, r, r_prime) -> float:
    """Kernel value between two points of R^d."""
    return float(kernel_from_distance(spec, _pair(spec, r, r_prime)))


def kernel_eval_odd(spec: KernelSpec, r, r_prime) -> float:
    """Kernel value through spherical Bessel functions (odd d only).

    Mathematically identical to :func:`kernel_eval`; kept separate so the two
    closed forms can be checked against each other.
    """
    if spec.d % 2 == 0:
        raise ValueError("kernel_eval_odd needs an odd dimension")
    return float(kernel_spherical_form(spec, _pair(spec, r, r_prime)))


def kernel_oracle_quadrature(spec: KernelSpec, r, r_prime, resolution: int = 128):
    """Kernel from direct numerical integration over the unit sphere.

    d = 1 sums the two directions {+1, -1}; d = 2 uses the trapezoid rule
    with ``resolution`` azimuths; d = 3 uses ``resolution`` Gauss-Legendre
    nodes in the polar cosine times ``2 * resolution`` trapezoid azimuths.

    Returns
    -------
    (float, float)
        Real and imaginary parts of the integral. The imaginary part should
        vanish up to rounding.
    """
    d = spec.d
    _pair(spec, r, r_prime)
    delta = np.atleast_1d(np.asarray(r, float)) - np.atleast_1d(np.asarray(r_prime, float))
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    if d == 1:
        dirs = np.array([[1.0], [-1.0]])
        weights = np.ones(2)
    elif d == 2:
        phi = 2.0 * math.pi * np.arange(resolution) / resolution
        dirs = np.column_stack([np.cos(phi), np.sin(phi)])
        weights = np.full(resolution, 2.0 * math.pi / resolution)
    elif d == 3:
        t, wt = np.polynomial.legendre.leggauss(resolution)
        n_az = 2 * resolution
        phi = 2.0 * math.pi * np.arange(n_az) / n_az
        s = np.sqrt(1.0 - t * t)
        dirs = np.stack(
            [
                np.outer(s, np.cos(phi)),
                np.outer(s, np.sin(phi)),
                np.outer(t, np.ones(n_az)),
            ],
            axis=-1,
        ).reshape(-1, 3)
        weights = np.outer(wt, np.full(n_az, 2.0 * math.pi / n_az)).ravel()
    else:
        raise ValueError(f"quadrature oracle supports d in (1, 2, 3), got {d}")
    vals = weights * np.exp(1j * spec.k * (dirs @ delta))
    total = vals.sum()
    return float(total.real), float(total.imag)
