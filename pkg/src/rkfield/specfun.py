"""Bessel-type special functions for real, non-negative arguments.

Only the orders the band-limited kernels need are supported:
``nu = m/2`` with integer ``m >= -1`` for cylindrical Bessel functions and
integer ``n >= -1`` for spherical Bessel functions.

All functions accept scalars or numpy arrays and broadcast elementwise.
Scalar input gives a Python float back.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = [
    "DomainError",
    "gamma_half_integer",
    "bessel_j",
    "bessel_j_scaled",
    "bessel_j_series",
    "bessel_j_asymptotic",
    "spherical_bessel_j",
    "spherical_bessel_j_scaled",
    "SERIES_SWITCH",
]

#: integer-order J uses the power series for z <= SERIES_SWITCH
SERIES_SWITCH = 12.0
_SERIES_TERMS = 40
_RESCALE = 1e150


class DomainError(ValueError):
    """Argument outside the domain of a special function (pole, negative z, bad order)."""


def _check_order(nu: float) -> float:
    twice = 2.0 * float(nu)
    if twice != round(twice) or twice < -1:
        raise DomainError(f"order must be m/2 with integer m >= -1, got {nu!r}")
    return float(nu)


def _as_z(z):
    arr = np.asarray(z, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("argument must be real and non-negative")
    return arr


def _wrap(arr, scalar):
    return float(arr) if scalar else arr


def gamma_half_integer(m: int) -> float:
    """Gamma function at ``m/2`` for integer ``m >= 1``.

    Evaluated by the recurrence Gamma(x + 1) = x Gamma(x) from the base cases
    Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).
    """
    if int(m) != m or m < 1:
        raise DomainError(f"gamma_half_integer needs an integer m >= 1, got {m!r}")
    m = int(m)
    if m % 2 == 0:
        return float(math.factorial(m // 2 - 1))
    value = math.sqrt(math.pi)
    x = 0.5
    while x < m / 2:
        value *= x
        x += 1.0
    return value


def _gamma_order_plus_one(nu: float) -> float:
    # Gamma(nu + 1) for nu = m/2, m >= -1
    return gamma_half_integer(int(round(2 * nu + 2)))


def bessel_j_scaled(nu: float, z):
    """``J_nu(z) / z**nu`` from its power series, finite at ``z = 0``.

    Intended for small arguments (the series is summed with a fixed number of
    terms, accurate for ``z <= SERIES_SWITCH``).
    """
    nu = _check_order(nu)
    scalar = np.ndim(z) == 0
    z = _as_z(z)
    q = -(0.5 * z) ** 2
    term = np.full(z.shape, 1.0 / (2.0**nu * _gamma_order_plus_one(nu)))
    total = term.copy()
    for m in range(1, _SERIES_TERMS):
        term = term * q / (m * (m + nu))
        total = total + term
    return _wrap(total, scalar)


def bessel_j_series(nu: float, z):
    """``J_nu(z)`` from the ascending power series (any supported order).

    Loses accuracy to cancellation for large ``z``; the dispatcher in
    :func:`bessel_j` only uses it for ``z <= SERIES_SWITCH``.
    """
    nu = _check_order(nu)
    scalar = np.ndim(z) == 0
    z = _as_z(z)
    if nu < 0 and np.any(z == 0):
        raise DomainError("J_{-1/2} has a pole at z = 0")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = bessel_j_scaled(nu, z) * z**nu
    return _wrap(out, scalar)


def bessel_j_asymptotic(nu: float, z):
    """Hankel large-argument expansion of ``J_nu(z)``, ``z > 0``.

    The P/Q series are summed until their terms stop decreasing. For
    half-integer orders the expansion terminates and is exact.
    """
    nu = _check_order(nu)
    scalar = np.ndim(z) == 0
    z = _as_z(z)
    if np.any(z == 0):
        raise DomainError("asymptotic expansion needs z > 0")
    mu = 4.0 * nu * nu
    p = np.ones_like(z)
    q = np.zeros_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    for kk in range(1, 80):
        new = term * (mu - (2 * kk - 1) ** 2) / (8.0 * kk * z)
        active &= np.abs(new) < np.abs(term)
        if not np.any(active):
            break
        contrib = np.where(active, new, 0.0)
        sign = -1.0 if (kk // 2) % 2 else 1.0
        if kk % 2:
            q = q + sign * contrib
        else:
            p = p + sign * contrib
        term = np.where(active, new, 0.0)
        active &= term != 0
    chi = z - (0.5 * nu + 0.25) * math.pi
    out = np.sqrt(2.0 / (math.pi * z)) * (p * np.cos(chi) - q * np.sin(chi))
    return _wrap(out, scalar)


def _j_int_miller(n: int, z: np.ndarray) -> np.ndarray:
    """Backward recurrence for J_n, normalized with J_0^2 + 2 sum J_k^2 = 1."""
    top = max(n, float(np.max(z)))
    m0 = 2 * ((int(top) + int(math.sqrt(40.0 * top)) + 20) // 2)
    f_next = np.zeros_like(z)
    f = np.full(z.shape, 1e-30)
    total = np.zeros_like(z)
    result = np.zeros_like(z)
    for m in range(m0, 0, -1):
        f_prev = (2.0 * m / z) * f - f_next
        f_next, f = f, f_prev
        # f now holds the unnormalized J_{m-1}
        if m - 1 == n:
            result = f.copy()
        if m - 1 >= 1:
            total = total + 2.0 * f * f
        big = np.abs(f) > _RESCALE
        if np.any(big):
            s = np.where(big, 1.0 / _RESCALE, 1.0)
            f, f_next, result = f * s, f_next * s, result * s
            total = total * s * s
    total = total + f * f
    scale = 1.0 / np.sqrt(total)
    # sign from whichever of J_0, J_1 is larger in magnitude
    j0 = bessel_j_asymptotic(0.0, z)
    j1 = bessel_j_asymptotic(1.0, z)
    f1 = f_next
    use0 = np.abs(j0) >= np.abs(j1)
    ref_true = np.where(use0, j0, j1)
    ref_rec = np.where(use0, f, f1)
    sign = np.where(np.sign(ref_rec) == np.sign(ref_true), 1.0, -1.0)
    return sign * scale * result


def _bessel_j_int(n: int, z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    small = z <= SERIES_SWITCH
    if np.any(small):
        out[small] = bessel_j_series(float(n), z[small])
    large = ~small
    if not np.any(large):
        return out
    zl = z[large]
    j0 = bessel_j_asymptotic(0.0, zl)
    if n == 0:
        out[large] = j0
        return out
    j1 = bessel_j_asymptotic(1.0, zl)
    if n == 1:
        out[large] = j1
        return out
    res = np.empty_like(zl)
    fwd = n < zl
    if np.any(fwd):
        zf = zl[fwd]
        a, b = j0[fwd], j1[fwd]
        for m in range(1, n):
            a, b = b, (2.0 * m / zf) * b - a
        res[fwd] = b
    if np.any(~fwd):
        res[~fwd] = _j_int_miller(n, zl[~fwd])
    out[large] = res
    return out


def spherical_bessel_j_scaled(n: int, z):
    """``j_n(z) / z**n`` from its power series; finite at zero for every ``n >= -1``.

    For ``n = -1`` this is ``z j_{-1}(z) = cos z``.
    """
    if int(n) != n or n < -1:
        raise DomainError(f"spherical order must be an integer >= -1, got {n!r}")
    n = int(n)
    scalar = np.ndim(z) == 0
    z = _as_z(z)
    dfact = 1.0
    for odd in range(2 * n + 1, 0, -2):
        dfact *= odd
    q = -0.5 * z * z
    term = np.full(z.shape, 1.0 / dfact)
    total = term.copy()
    for m in range(1, _SERIES_TERMS):
        term = term * q / (m * (2 * n + 2 * m + 1))
        total = total + term
    return _wrap(total, scalar)


def _sph_miller(n: int, z: np.ndarray) -> np.ndarray:
    """Backward recurrence normalized with sum_k (2k + 1) j_k^2 = 1."""
    top = max(n, float(np.max(z)))
    m0 = int(top) + int(math.sqrt(40.0 * top)) + 20
    f_next = np.zeros_like(z)
    f = np.full(z.shape, 1e-30)
    total = (2 * m0 + 1) * f * f
    result = f.copy() if m0 == n else np.zeros_like(z)
    for m in range(m0, 0, -1):
        f_prev = ((2 * m + 1) / z) * f - f_next
        f_next, f = f, f_prev
        total = total + (2 * m - 1) * f * f
        if m - 1 == n:
            result = f.copy()
        big = np.abs(f) > _RESCALE
        if np.any(big):
            s = np.where(big, 1.0 / _RESCALE, 1.0)
            f, f_next, result = f * s, f_next * s, result * s
            total = total * s * s
    scale = 1.0 / np.sqrt(total)
    j0 = np.sin(z) / z
    j1 = np.sin(z) / z**2 - np.cos(z) / z
    use0 = np.abs(j0) >= np.abs(j1)
    ref_true = np.where(use0, j0, j1)
    ref_rec = np.where(use0, f, f_next)
    sign = np.where(np.sign(ref_rec) == np.sign(ref_true), 1.0, -1.0)
    return sign * scale * result


def _sph_positive(n: int, z: np.ndarray) -> np.ndarray:
    # z > 0, n >= 1
    out = np.empty_like(z)
    tiny = z < 1.0
    if np.any(tiny):
        out[tiny] = spherical_bessel_j_scaled(n, z[tiny]) * z[tiny] ** n
    up = (~tiny) & (z >= n)
    if np.any(up):
        zu = z[up]
        a = np.sin(zu) / zu
        b = a / zu - np.cos(zu) / zu
        for m in range(1, n):
            a, b = b, ((2 * m + 1) / zu) * b - a
        out[up] = b
    mid = (~tiny) & (z < n)
    if np.any(mid):
        out[mid] = _sph_miller(n, z[mid])
    return out


def spherical_bessel_j(n: int, z):
    """Spherical Bessel function ``j_n(z)`` for integer ``n >= -1`` and ``z >= 0``.

    ``j_{-1}(z) = cos(z)/z``, which makes ``j_n(z) = sqrt(pi/(2z)) J_{n+1/2}(z)``
    hold for ``n = -1`` as well. It has a pole at the origin.

    Raises
    ------
    DomainError
        For ``n = -1`` at ``z = 0``, negative ``z`` or an invalid order.
    """
    if int(n) != n or n < -1:
        raise DomainError(f"spherical order must be an integer >= -1, got {n!r}")
    n = int(n)
    scalar = np.ndim(z) == 0
    z = _as_z(z)
    if n == -1:
        if np.any(z == 0):
            raise DomainError("j_{-1} has a pole at z = 0")
        return _wrap(np.cos(z) / z, scalar)
    if n == 0:
        return _wrap(np.sinc(z / math.pi), scalar)
    out = np.zeros_like(z)
    pos = z > 0
    if np.any(pos):
        out[pos] = _sph_positive(n, z[pos])
    return _wrap(out, scalar)


def bessel_j(nu: float, z):
    """Bessel function of the first kind ``J_nu(z)``.

    Parameters
    ----------
    nu : float
        Order, an integer or half-integer ``>= -1/2``.
    z : float or ndarray
        Non-negative argument(s).

    Returns
    -------
    float or ndarray
        Half-integer orders go through the trigonometric closed forms of the
        spherical Bessel functions. Integer orders use the power series for
        ``z <= 12`` and the Hankel expansion plus recurrence beyond.

    Raises
    ------
    DomainError
        At the pole ``nu = -1/2, z = 0``, for negative ``z`` or for an
        unsupported order.
    """
    nu = _check_order(nu)
    scalar = np.ndim(z) == 0
    z = _as_z(z)
    if nu == -0.5:
        if np.any(z == 0):
            raise DomainError("J_{-1/2} has a pole at z = 0")
        return _wrap(np.sqrt(2.0 / (math.pi * z)) * np.cos(z), scalar)
    if nu != int(nu):
        n = int(nu - 0.5)
        out = np.sqrt(2.0 * z / math.pi) * spherical_bessel_j(n, z)
        return _wrap(out, scalar)
    return _wrap(_bessel_j_int(int(nu), z), scalar)
