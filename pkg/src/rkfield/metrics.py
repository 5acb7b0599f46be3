"""Normalized error maps and their region averages."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .specfun import DomainError

__all__ = ["ErrorField", "normalized_error", "region_mean_ne", "error_field", "square_grid"]


def square_grid(side: float, n: int) -> np.ndarray:
    """``n x n`` uniform grid on ``[-side/2, side/2]**2`` as (n*n, 2), x fastest."""
    g = np.linspace(-side / 2.0, side / 2.0, int(n))
    x, y = np.meshgrid(g, g)
    return np.column_stack([x.ravel(), y.ravel()])


def normalized_error(reference, estimate):
    """``20 log10(|p - p_est| / |p|)`` in dB; ``-inf`` where the error is exactly zero."""
    ref = np.asarray(reference, dtype=complex)
    est = np.asarray(estimate, dtype=complex)
    if np.any(ref == 0):
        raise DomainError("normalized error is undefined for a zero reference")
    with np.errstate(divide="ignore"):
        out = 20.0 * np.log10(np.abs(ref - est) / np.abs(ref))
    return float(out) if out.ndim == 0 else out


def region_mean_ne(reference, estimate, average: str = "db") -> float:
    """Region average of the normalized error.

    ``average="db"`` is the arithmetic mean of the dB values (points with
    zero error excluded); ``"linear"`` is ``10 log10`` of the mean squared
    error ratio.
    """
    ne = np.atleast_1d(normalized_error(reference, estimate))
    if average == "db":
        finite = ne[np.isfinite(ne)]
        return float(finite.mean()) if finite.size else float("-inf")
    if average == "linear":
        return float(10.0 * np.log10(np.mean(10.0 ** (ne / 10.0))))
    raise ValueError(f"unknown averaging {average!r}")


@dataclass(frozen=True)
class ErrorField:
    grid: np.ndarray
    ne_db: np.ndarray = field(repr=False)
    region_mean_db: float
    n_excluded: int

    def summary(self) -> dict:
        return {
            "region_mean_db": self.region_mean_db if np.isfinite(self.region_mean_db) else None,
            "n_points": int(self.ne_db.size),
            "n_excluded": self.n_excluded,
        }


def error_field(grid, reference, estimate, average: str = "db") -> ErrorField:
    ne = np.atleast_1d(normalized_error(reference, estimate))
    return ErrorField(
        np.asarray(grid, dtype=float),
        ne,
        region_mean_ne(reference, estimate, average),
        int(np.sum(~np.isfinite(ne))),
    )
