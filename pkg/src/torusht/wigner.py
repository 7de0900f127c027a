"""Wigner d-function planes.

A plane holds every entry d^l_{m',n}(beta) for one degree l, stored as a
dense (2l+1) x (2l+1) array with index offset l. Three routes produce
planes:

* ``plane_risbo``: degree-by-degree recursion, valid for any beta, stable
  to very high degree. The workhorse.
* ``plane_trapani``: degree-by-degree recursion specialized to beta = pi/2,
  cheaper per entry than Risbo. Documented stable to l of a few thousand.
* ``plane_jacobi``: direct closed-form evaluation through Jacobi
  polynomials, limited to l <= 64. Serves as the reference the recursions
  are validated against.

``row_three_term`` walks a single (m, n) entry across degrees instead,
which is the access pattern the Gauss-Legendre transform needs.

Both recursions carry state explicitly: each call takes the plane for the
previous degree and returns a new immutable plane, so independent
iterations can run concurrently.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, UnsupportedDegreeError
from .kernels import risbo_step_into, trapani_step

_HALF_PI = math.pi / 2.0
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

JACOBI_DEGREE_LIMIT = 64


@dataclass(frozen=True)
class WignerPlane:
    """All d^l_{m',n}(beta) for one degree, indexed (l+m', l+n)."""

    ell: int
    beta: float
    values: np.ndarray

    def __post_init__(self):
        side = 2 * self.ell + 1
        if self.values.shape != (side, side):
            raise ContractViolationError(
                f"plane for ell={self.ell} must have shape ({side}, {side}), "
                f"got {self.values.shape}"
            )
        self.values.flags.writeable = False

    def value(self, m_prime, n):
        """Entry d^l_{m',n}; indices must lie in [-l, l]."""
        ell = self.ell
        if abs(m_prime) > ell or abs(n) > ell:
            raise ContractViolationError(
                f"orders ({m_prime}, {n}) out of range for ell={ell}"
            )
        return self.values[ell + m_prime, ell + n]


def _check_prev(ell, prev, beta):
    if ell == 0:
        if prev is not None:
            raise ContractViolationError("ell=0 takes no previous plane")
        return
    if prev is None:
        raise ContractViolationError(
            f"plane for ell={ell} requires the plane for ell={ell - 1}"
        )
    if prev.ell != ell - 1:
        raise ContractViolationError(
            f"previous plane has degree {prev.ell}, expected {ell - 1}"
        )
    if prev.beta != beta:
        raise ContractViolationError(
            f"previous plane was computed at beta={prev.beta}, not {beta}"
        )


def plane_risbo(ell, beta, prev=None):
    """Advance the Risbo recursion by one degree.

    Parameters
    ----------
    ell : int
        Target degree, >= 0.
    beta : float
        Angle in radians, in [0, pi]. Must match ``prev.beta``.
    prev : WignerPlane or None
        Plane for degree ell-1 from this same recursion, or None when
        ell = 0.

    Returns
    -------
    WignerPlane
        The full plane for degree ell. O(l^2) work per call.
    """
    if ell < 0:
        raise ContractViolationError(f"degree must be >= 0, got {ell}")
    if not 0.0 <= beta <= math.pi:
        raise ContractViolationError(f"beta must lie in [0, pi], got {beta}")
    _check_prev(ell, prev, beta)
    side = 2 * ell + 1
    a = np.zeros((side, side), dtype=np.float64)
    if ell == 0:
        a[0, 0] = 1.0
        return WignerPlane(0, beta, a)
    a[: side - 2, : side - 2] = prev.values
    b = np.zeros((side - 1, side - 1), dtype=np.float64)
    risbo_step_into(a, b, ell, math.cos(beta / 2.0), math.sin(beta / 2.0))
    return WignerPlane(ell, beta, a)


def plane_trapani(ell, prev=None):
    """Advance the pi/2-only recursion by one degree.

    State lives in the m' >= 0, n >= 0 quadrant; the returned plane is
    filled out to all four quadrants through the sign relations
    d_{m',-n} = (-1)^{l+m'} d_{m',n} and d_{-m',n} = (-1)^{l-n} d_{m',n}.
    """
    if ell < 0:
        raise ContractViolationError(f"degree must be >= 0, got {ell}")
    _check_prev(ell, prev, _HALF_PI)
    quad = np.zeros((ell + 1, ell + 1), dtype=np.float64)
    if ell > 0:
        quad[:ell, :ell] = prev.values[ell - 1 :, ell - 1 :]
    trapani_step(quad, ell)
    full = np.empty((2 * ell + 1, 2 * ell + 1), dtype=np.float64)
    full[ell:, ell:] = quad
    if ell > 0:
        # (-1)^(l-k) == (-1)^(l+k), so one vector serves both sign rules.
        sgn = np.where((ell - np.arange(ell + 1)) % 2 == 0, 1.0, -1.0)
        idx = np.arange(1, ell + 1)
        ab = np.where((idx[:, None] + idx[None, :]) % 2 == 0, 1.0, -1.0)
        full[ell:, :ell] = (quad[:, 1:])[:, ::-1] * sgn[:, None]
        full[:ell, ell:] = (quad[1:, :])[::-1, :] * sgn[None, :]
        full[:ell, :ell] = (quad[1:, 1:] * ab)[::-1, ::-1]
    return WignerPlane(ell, _HALF_PI, full)


def plane_jacobi(ell, beta):
    """Evaluate a full plane directly from the closed form.

    Each entry is a square-root prefactor of factorial ratios, half-angle
    sine and cosine powers, and a Jacobi polynomial value. The prefactor
    is computed through log-gamma differences so it stays finite at every
    degree this oracle accepts. Indices are first mapped into the region
    n >= |m| so the half-angle exponents are never negative.

    Only degrees up to 64 are supported; the point of this routine is
    trust, not speed.
    """
    if ell < 0:
        raise ContractViolationError(f"degree must be >= 0, got {ell}")
    if ell > JACOBI_DEGREE_LIMIT:
        raise UnsupportedDegreeError(
            f"closed-form evaluation supports ell <= {JACOBI_DEGREE_LIMIT}, "
            f"got {ell}"
        )
    cc = math.cos(beta / 2.0)
    ss = math.sin(beta / 2.0)
    x = math.cos(beta)
    side = 2 * ell + 1
    values = np.empty((side, side), dtype=np.float64)
    for m in range(-ell, ell + 1):
        for n in range(-ell, ell + 1):
            values[ell + m, ell + n] = _d_entry(ell, m, n, cc, ss, x)
    return WignerPlane(ell, beta, values)


def _d_entry(ell, m, n, cc, ss, x):
    """One d^l_{mn} value; indices are folded into n >= |m| first."""
    if n >= abs(m):
        mm, nn, sign = m, n, 1.0
    elif n <= -abs(m):
        mm, nn = -m, -n
        sign = -1.0 if (m - n) % 2 else 1.0
    elif m >= abs(n):
        mm, nn = n, m
        sign = -1.0 if (m - n) % 2 else 1.0
    else:
        mm, nn, sign = -n, -m, 1.0
    pref = math.exp(0.5 * (
        math.lgamma(ell + nn + 1) + math.lgamma(ell - nn + 1)
        - math.lgamma(ell + mm + 1) - math.lgamma(ell - mm + 1)
    ))
    a = nn - mm
    b = nn + mm
    return sign * pref * ss**a * cc**b * _jacobi_value(ell - nn, a, b, x)


def _jacobi_value(k, a, b, x):
    """P^{(a,b)}_k(x) by the standard three-term recurrence; a, b >= 0."""
    if k == 0:
        return 1.0
    pkm1 = 1.0
    pk = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for j in range(2, k + 1):
        s = 2.0 * j + a + b
        c0 = 2.0 * j * (j + a + b) * (s - 2.0)
        c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c2 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * s
        pk, pkm1 = (c1 * pk - c2 * pkm1) / c0, pk
    return pk


def row_three_term(ell_max, m, n, beta):
    """Values d^l_{mn}(beta) for l = max(|m|, |n|) .. ell_max - 1.

    Pointwise three-term recursion in the degree: O(1) work per degree
    for a fixed (m, n, beta) triple. Requires beta strictly inside
    (0, pi) and |m|, |n| < ell_max.

    Returns a float array of length ell_max - max(|m|, |n|).
    """
    if not 0.0 < beta < math.pi:
        raise ContractViolationError(
            f"beta must lie strictly inside (0, pi), got {beta}"
        )
    if abs(m) >= ell_max or abs(n) >= ell_max:
        raise ContractViolationError(
            f"orders ({m}, {n}) must satisfy |m|, |n| < ell_max = {ell_max}"
        )
    ell0 = max(abs(m), abs(n))
    cc = math.cos(beta / 2.0)
    ss = math.sin(beta / 2.0)
    x = math.cos(beta)
    out = np.empty(ell_max - ell0, dtype=np.float64)
    dl = _d_entry(ell0, m, n, cc, ss, x)
    dlm1 = 0.0
    for el in range(ell0, ell_max):
        out[el - ell0] = dl
        if el == ell_max - 1:
            break
        if el == 0:
            dl, dlm1 = x * dl, dl
        else:
            den = el * math.sqrt(((el + 1.0) ** 2 - m * m) * ((el + 1.0) ** 2 - n * n))
            t = ((2.0 * el + 1.0) * (el * (el + 1.0) * x - m * n) * dl
                 - (el + 1.0) * math.sqrt((el * el - m * m) * (el * el - n * n)) * dlm1)
            dl, dlm1 = t / den, dl
    return out


def plane(ell, beta, prev=None, method="risbo"):
    """Compute one plane by the chosen method (default Risbo).

    ``method`` is one of 'risbo', 'trapani' (beta must be pi/2), or
    'jacobi' (no ``prev`` state, l <= 64).
    """
    if method == "risbo":
        return plane_risbo(ell, beta, prev)
    if method == "trapani":
        if beta != _HALF_PI:
            raise ContractViolationError(
                "the pi/2 recursion only evaluates at beta = pi/2"
            )
        return plane_trapani(ell, prev)
    if method == "jacobi":
        if prev is not None:
            raise ContractViolationError(
                "closed-form evaluation takes no previous plane"
            )
        return plane_jacobi(ell, beta)
    raise ValueError(f"unknown method {method!r}")
