"""Circular-harmonic expansion model (2-D comparison method).

``p(r, theta) ~ sum_{n=-N}^{N} b_n J_|n|(k r) exp(i n theta)`` in polar
coordinates about an expansion center, with the coefficients from
Tikhonov-regularized least squares
``b = (B^H B + lam I)^{-1} B^H p``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .scenario import SampleSet
from .solver import SingularSystemError
from .specfun import bessel_j

__all__ = [
    "HarmonicModel",
    "harmonic_matrix",
    "fit_harmonic",
    "evaluate_harmonic",
    "jacobi_anger_coefficients",
    "default_order",
]


@dataclass(frozen=True)
class HarmonicModel:
    order: int
    coefficients: np.ndarray = field(repr=False)
    k: float
    center: tuple = (0.0, 0.0)

    def __post_init__(self):
        if self.order < 0 or len(self.coefficients) != 2 * self.order + 1:
            raise ValueError("need 2N + 1 coefficients for order N >= 0")

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.order, self.order + 1)

    def coefficient(self, n: int) -> complex:
        return complex(self.coefficients[n + self.order])


def default_order(n_samples: int) -> int:
    """Largest N with 2N + 1 <= number of samples."""
    return max((n_samples - 1) // 2, 0)


def harmonic_matrix(points, order: int, k: float, center=(0.0, 0.0)) -> np.ndarray:
    """``B[m, n] = J_|n|(k r_m) exp(i n theta_m)`` for n = -N..N."""
    x = np.asarray(points, dtype=float) - np.asarray(center, dtype=float)
    if x.ndim != 2 or x.shape[1] != 2:
        raise ValueError("circular harmonics need 2-D points")
    r = np.hypot(x[:, 0], x[:, 1])
    theta = np.arctan2(x[:, 1], x[:, 0])
    n = np.arange(-order, order + 1)
    radial = np.empty((x.shape[0], order + 1))
    for m in range(order + 1):
        radial[:, m] = bessel_j(float(m), k * r)
    return radial[:, np.abs(n)] * np.exp(1j * np.outer(theta, n))


def fit_harmonic(
    samples: SampleSet, order: int, k: float, lam: float = 0.0, center=(0.0, 0.0)
) -> HarmonicModel:
    """Regularized least-squares fit of the expansion coefficients.

    Solved as the stacked least-squares problem ``[B; sqrt(lam) I] b = [p; 0]``,
    whose normal equations are exactly ``(B^H B + lam I) b = B^H p``.
    """
    if samples.d != 2:
        raise ValueError("the circular-harmonic baseline is 2-D only")
    n_coef = 2 * order + 1
    if n_coef > len(samples):
        warnings.warn(
            f"{n_coef} coefficients from {len(samples)} samples: underdetermined",
            stacklevel=2,
        )
    b_mat = harmonic_matrix(samples.positions, order, k, center)
    rhs = samples.pressures
    if lam > 0:
        b_mat = np.vstack([b_mat, np.sqrt(lam) * np.eye(n_coef)])
        rhs = np.concatenate([rhs, np.zeros(n_coef, dtype=complex)])
    coef, _, rank, sv = np.linalg.lstsq(b_mat, rhs, rcond=None)
    if rank < n_coef:
        raise SingularSystemError(
            f"harmonic basis rank {rank} < {n_coef} coefficients; add samples or regularize"
        )
    return HarmonicModel(int(order), coef, float(k), tuple(center))


def evaluate_harmonic(model: HarmonicModel, query_points) -> np.ndarray:
    return harmonic_matrix(query_points, model.order, model.k, model.center) @ model.coefficients


def jacobi_anger_coefficients(order: int, angle: float) -> np.ndarray:
    """Exact coefficients ``i**|n| exp(-i n angle)`` of a unit plane wave travelling at ``angle`` (rad)."""
    n = np.arange(-order, order + 1)
    return (1j ** np.abs(n)) * np.exp(-1j * n * angle)
