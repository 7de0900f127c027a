"""Gauss-Legendre sampling comparator.

The alternative exact sampling: L colatitude rings at the roots of the
degree-L Legendre polynomial with Gauss-Legendre weights, 2L-1 equispaced
azimuths. Forward and inverse transforms run by separation of variables
(FFT in azimuth, explicit quadrature respectively summation in
colatitude) at O(L^3), with the Wigner values generated pointwise by the
three-term degree recursion.

That recursion is known to go unstable somewhere above band-limit 1024,
so both transforms refuse larger band-limits unless explicitly
overridden; node computation itself stays solid far beyond that.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ContractViolationError,
    ConvergenceError,
    InvalidSpinError,
    UnsupportedDegreeError,
)
from .grid import check_band_limit
from .kernels import gl_flm_core, gl_fm_core
from .mw import HarmonicCoeffs, _check_spin, _cl, _flatten, _unflatten

STABLE_BAND_LIMIT = 1024

_NEWTON_CAP = 100
_NEWTON_TOL = 1e-15
_STALL_STEP = 2.5e-16


@dataclass(frozen=True)
class GlGrid:
    """Nodes x_i = cos(theta_i) (strictly decreasing), weights, azimuths."""

    band_limit: int
    nodes: np.ndarray
    weights: np.ndarray
    phis: np.ndarray

    def __post_init__(self):
        self.nodes.flags.writeable = False
        self.weights.flags.writeable = False
        self.phis.flags.writeable = False


def _legendre_and_deriv(L, x):
    """P_L and P'_L at the points x, by the degree recurrence."""
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, L + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    if L == 0:
        return p0, np.zeros_like(x)
    if L == 1:
        return x.copy(), np.ones_like(x)
    dp = L * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def gl_nodes(band_limit):
    """Legendre roots and quadrature weights by Newton refinement.

    Starts from the Chebyshev-angle approximation and iterates
    x <- x - P_L/P'_L until |P_L| <= 1e-15 or the step falls below one
    ulp of the node scale (the roots are then exact to machine precision
    even though |P_L| itself floors at roughly L times epsilon). More
    than 100 iterations raises; in practice 3 to 5 suffice at any L.
    """
    check_band_limit(band_limit)
    L = int(band_limit)
    i = np.arange(L)
    x = np.cos(math.pi * (i + 0.75) / (L + 0.5))
    for _ in range(_NEWTON_CAP):
        p, dp = _legendre_and_deriv(L, x)
        if np.max(np.abs(p)) <= _NEWTON_TOL:
            break
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) <= _STALL_STEP:
            break
    else:
        raise ConvergenceError(
            f"Legendre root refinement did not converge within {_NEWTON_CAP} "
            f"iterations at L={L}"
        )
    p, dp = _legendre_and_deriv(L, x)
    weights = 2.0 / ((1.0 - x * x) * dp * dp)
    phis = 2.0 * math.pi * np.arange(2 * L - 1) / (2 * L - 1)
    return GlGrid(L, x, weights, phis)


def _check_stability(L, allow_unstable):
    if L > STABLE_BAND_LIMIT and not allow_unstable:
        raise UnsupportedDegreeError(
            f"the pointwise degree recursion is unstable beyond "
            f"L={STABLE_BAND_LIMIT}; pass allow_unstable=True to proceed "
            f"at L={L} anyway"
        )


def _node_half_angles(nodes):
    """cos(theta/2), sin(theta/2) from x = cos(theta), exactly in x."""
    ch = np.sqrt((1.0 + nodes) / 2.0)
    sh = np.sqrt((1.0 - nodes) / 2.0)
    return ch, sh


def gl_forward(samples, spin, grid=None, allow_unstable=False):
    """Harmonic coefficients from samples on the Gauss-Legendre grid.

    ``samples[i, p]`` holds the signal at (theta_i, phi_p); exact for
    signals band-limited at L = samples.shape[0]. Per ring, an FFT gives
    G_m(theta_i); then
    ..f_lm = (-1)^s sqrt((2l+1)/4pi) sum_i lambda_i d^l_{m,-s}(theta_i)
    G_m(theta_i), the colatitude integral done by the quadrature rule.
    """
    f = np.asarray(samples)
    if f.ndim != 2 or f.shape[1] != 2 * f.shape[0] - 1:
        raise ContractViolationError(
            f"samples must have shape (L, 2L-1), got {f.shape}"
        )
    L = f.shape[0]
    _check_spin(L, spin)
    _check_stability(L, allow_unstable)
    if grid is None:
        grid = gl_nodes(L)
    elif grid.band_limit != L:
        raise ContractViolationError(
            f"grid band limit {grid.band_limit} does not match samples at L={L}"
        )
    gm = np.fft.fftshift(np.fft.fft(f, axis=1), axes=1)
    gm *= 2.0 * math.pi / (2 * L - 1)
    a = np.ascontiguousarray(gm.T * grid.weights[None, :])
    ch, sh = _node_half_angles(grid.nodes)
    R = gl_flm_core(a, grid.nodes, ch, sh, L, spin)
    out2d = R * _cl(L)[:, None]
    if spin % 2:
        out2d = -out2d
    return HarmonicCoeffs(L, spin, _flatten(out2d, L))


def gl_inverse(coeffs, spin=None, grid=None, allow_unstable=False):
    """Samples on the Gauss-Legendre grid from harmonic coefficients.

    Per azimuthal order, the degree sum F_m(theta_i) = sum_l (-1)^s
    sqrt((2l+1)/4pi) d^l_{m,-s}(theta_i) ..f_lm runs pointwise per node;
    an inverse FFT then synthesizes each ring.
    """
    if spin is None:
        spin = coeffs.spin
    elif spin != coeffs.spin:
        raise ContractViolationError(
            f"requested spin {spin} does not match the coefficients' "
            f"spin {coeffs.spin}"
        )
    L = coeffs.band_limit
    _check_spin(L, spin)
    _check_stability(L, allow_unstable)
    if grid is None:
        grid = gl_nodes(L)
    elif grid.band_limit != L:
        raise ContractViolationError(
            f"grid band limit {grid.band_limit} does not match coefficients "
            f"at L={L}"
        )
    flm_scaled = _unflatten(coeffs.values, L) * _cl(L)[:, None]
    if spin % 2:
        flm_scaled = -flm_scaled
    ch, sh = _node_half_angles(grid.nodes)
    F = gl_fm_core(flm_scaled, grid.nodes, ch, sh, L, spin)
    rows = np.fft.ifft(np.fft.ifftshift(F.T, axes=1), axis=1)
    return rows * (2 * L - 1)
