"""Dense Gram-system assembly and Tikhonov-regularized solves."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .kernel import KernelSpec, kernel_from_distance, pairwise_distance

__all__ = [
    "GramSystem",
    "SingularSystemError",
    "assemble_gram",
    "solve_tikhonov",
    "min_eigen_ratio",
    "CONDITION_LIMIT",
]

log = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
_JITTER = 1e-12
_RESIDUAL_TOL = 1e-10


class SingularSystemError(np.linalg.LinAlgError):
    """The unregularized system is too ill-conditioned to trust a solution."""


@dataclass
class GramSystem:
    """``(matrix + lam I) a = rhs`` with a real symmetric ``matrix``."""

    matrix: np.ndarray
    rhs: np.ndarray
    lam: float = 0.0
    #: filled in by :func:`solve_tikhonov`
    jitter: float = 0.0
    condition: float = float("nan")

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float)
        self.rhs = np.asarray(self.rhs, dtype=complex).ravel()
        n = self.matrix.shape[0]
        if self.matrix.shape != (n, n) or self.rhs.shape != (n,):
            raise ValueError("matrix must be N x N and rhs length N")
        if self.lam < 0:
            raise ValueError("regularization must be >= 0")


def assemble_gram(spec: KernelSpec, centers) -> np.ndarray:
    """Gram matrix ``K[i, j] = kappa(r_i, r_j)``, exactly symmetric."""
    x = np.asarray(centers, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[0] < 1 or x.shape[1] != spec.d:
        raise ValueError("centers must be a non-empty (N, d) array")
    n = x.shape[0]
    iu, ju = np.triu_indices(n)
    rho = pairwise_distance(x, x)[iu, ju]
    gram = np.empty((n, n))
    vals = kernel_from_distance(spec, rho)
    gram[iu, ju] = vals
    gram[ju, iu] = vals
    return gram


def min_eigen_ratio(matrix) -> float:
    """Smallest eigenvalue divided by the largest (PSD diagnostic)."""
    w = np.linalg.eigvalsh(matrix)
    return float(w[0] / w[-1])


def _factor_solve(a: np.ndarray, b: np.ndarray):
    try:
        c = scipy.linalg.cho_factor(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError:
        return None
    return lambda rhs: scipy.linalg.cho_solve(c, rhs, check_finite=False)


def solve_tikhonov(system: GramSystem) -> np.ndarray:
    """Coefficients ``a`` with ``(K + lam I) a = p``.

    Cholesky on ``K + lam I``. When that fails for ``lam = 0`` the solve is
    retried with a diagonal jitter of ``1e-12 * trace(K) / N`` followed by
    iterative refinement against the unjittered matrix; a symmetric
    indefinite factorization is the last resort.

    Raises
    ------
    SingularSystemError
        For ``lam = 0`` when the condition number exceeds 1e12, or when the
        residual bound of 1e-10 cannot be met.
    """
    k = system.matrix
    n = k.shape[0]
    a_mat = k + system.lam * np.eye(n)
    if system.lam == 0:
        w = np.abs(np.linalg.eigvalsh(k))
        cond = float(w.max() / w.min()) if w.min() > 0 else float("inf")
        system.condition = cond
        if cond > CONDITION_LIMIT:
            raise SingularSystemError(
                f"Gram matrix condition {cond:.3g} exceeds {CONDITION_LIMIT:.0e} at lambda = 0"
            )
    # real and imaginary parts as two real right-hand sides
    b = np.column_stack([system.rhs.real, system.rhs.imag])
    solve = _factor_solve(a_mat, b)
    if solve is None and system.lam == 0:
        jitter = _JITTER * float(np.trace(k)) / n
        solve = _factor_solve(a_mat + jitter * np.eye(n), b)
        if solve is not None:
            system.jitter = jitter
            log.info("Cholesky failed at lambda = 0; retried with jitter %.3g", jitter)
    if solve is None:
        lu = scipy.linalg.lu_factor(a_mat, check_finite=False)
        solve = lambda rhs: scipy.linalg.lu_solve(lu, rhs, check_finite=False)  # noqa: E731
    x = solve(b)
    scale = max(np.linalg.norm(b), np.finfo(float).tiny)
    for _ in range(3):
        resid = b - a_mat @ x
        if np.linalg.norm(resid) <= _RESIDUAL_TOL * scale:
            break
        x = x + solve(resid)
    resid = np.linalg.norm(b - a_mat @ x) / scale
    if resid > _RESIDUAL_TOL and np.linalg.norm(b) > 0:
        raise SingularSystemError(f"relative residual {resid:.3g} exceeds {_RESIDUAL_TOL}")
    return x[:, 0] + 1j * x[:, 1]
