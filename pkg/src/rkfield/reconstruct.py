"""Kernel-expansion sound field model fitted to scattered pressure samples.

The estimate is ``p_est(r) = sum_n a_n kappa(r, r_n)`` with
``(K + lam I) a = p``. This is also the kernel ridge regression solution:
for ``f = sum_n a_n kappa(., r_n)`` the reproducing property gives
``||f||**2 = sum_ij conj(a_i) a_j kappa(r_i, r_j) = a^H K a``, so the
functional ``sum |p_n - f(r_n)|**2 + lam ||f||**2`` becomes the quadratic
``|p - K a|**2 + lam a^H K a`` whose stationarity condition is
``K ((K + lam I) a - p) = 0``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .kernel import KernelSpec, kernel_matrix
from .scenario import SampleSet
from .solver import GramSystem, assemble_gram, solve_tikhonov

__all__ = [
    "FittedModel",
    "DuplicatePositionWarning",
    "merge_duplicates",
    "fit",
    "evaluate",
    "krr_objective",
]

_CHUNK = 4096


class DuplicatePositionWarning(UserWarning):
    """Repeated sample positions make the unregularized Gram matrix singular."""


@dataclass(frozen=True)
class FittedModel:
    spec: KernelSpec
    centers: np.ndarray
    coefficients: np.ndarray = field(repr=False)
    lam: float = 0.0
    jitter: float = 0.0

    def __call__(self, query_points):
        return evaluate(self, query_points)

    def to_dict(self) -> dict:
        """JSON-ready form; complex coefficients as ``[re, im]`` pairs."""
        return {
            "spec": {"d": self.spec.d, "k": self.spec.k},
            "centers": self.centers.tolist(),
            "coefficients": [[float(c.real), float(c.imag)] for c in self.coefficients],
            "lambda": self.lam,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FittedModel":
        coef = np.array([complex(re, im) for re, im in data["coefficients"]])
        spec = KernelSpec(int(data["spec"]["d"]), float(data["spec"]["k"]))
        centers = np.asarray(data["centers"], dtype=float).reshape(len(coef), spec.d)
        return cls(spec, centers, coef, float(data["lambda"]))


def merge_duplicates(samples: SampleSet) -> SampleSet:
    """Collapse repeated positions into one sample with the mean pressure."""
    uniq, inverse = np.unique(samples.positions, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    if uniq.shape[0] == len(samples):
        return samples
    sums = np.zeros(uniq.shape[0], dtype=complex)
    np.add.at(sums, inverse, samples.pressures)
    counts = np.bincount(inverse, minlength=uniq.shape[0])
    return SampleSet(uniq, sums / counts)


def fit(spec: KernelSpec, samples: SampleSet, lam: float = 0.0) -> FittedModel:
    """Solve for the expansion coefficients.

    Duplicate positions raise a :class:`DuplicatePositionWarning`; with
    ``lam = 0`` they are merged (pressures averaged) before solving.
    """
    if samples.d != spec.d:
        raise ValueError(f"samples are {samples.d}-dimensional, kernel is {spec.d}-dimensional")
    if lam < 0:
        raise ValueError("regularization must be >= 0")
    if samples.has_duplicates():
        warnings.warn(
            "duplicate sample positions" + (" merged by averaging" if lam == 0 else ""),
            DuplicatePositionWarning,
            stacklevel=2,
        )
        if lam == 0:
            samples = merge_duplicates(samples)
    system = GramSystem(assemble_gram(spec, samples.positions), samples.pressures, lam)
    coef = solve_tikhonov(system)
    return FittedModel(spec, samples.positions.copy(), coef, float(lam), system.jitter)


def evaluate(model: FittedModel, query_points) -> np.ndarray:
    """Model pressure at query points (M, d)."""
    q = np.asarray(query_points, dtype=float)
    if q.ndim == 1:
        q = q[:, None] if model.spec.d == 1 else q[None, :]
    if q.shape[1] != model.spec.d:
        raise ValueError(f"query points have dimension {q.shape[1]}, expected {model.spec.d}")
    out = np.empty(q.shape[0], dtype=complex)
    for start in range(0, q.shape[0], _CHUNK):
        block = q[start : start + _CHUNK]
        out[start : start + _CHUNK] = kernel_matrix(model.spec, block, model.centers) @ model.coefficients
    return out


def krr_objective(coefficients, samples: SampleSet, spec: KernelSpec, lam: float) -> float:
    """``sum |p_n - f(r_n)|**2 + lam ||f||**2`` for ``f = sum a_n kappa(., r_n)``."""
    a = np.asarray(coefficients, dtype=complex)
    gram = assemble_gram(spec, samples.positions)
    ka = gram @ a
    data = float(np.sum(np.abs(samples.pressures - ka) ** 2))
    norm2 = float(np.real(np.vdot(a, ka)))
    return data + lam * norm2
