"""Slow independent reference transforms.

Everything here is evaluated as the literal defining sum: explicit basis
summation for the inverse, explicit DFT sums plus the unpadded
convolution double sum for the forward, with every Wigner value taken
from the closed-form Jacobi evaluation. No FFTs, no recursions across
degrees, no code shared with the fast pipeline beyond the public data
types. The point is that a bug in the fast path and a bug here would
have to be two independent bugs agreeing with each other.

Degrees are capped (32 for transforms, 64 for single basis values) by
the closed-form evaluator's range and by the O(L^4)-and-up costs.
"""

import cmath
import math

import numpy as np

from .errors import ContractViolationError, UnsupportedDegreeError
from .mw import HarmonicCoeffs, MwSignal
from .wigner import plane_jacobi

NAIVE_BAND_LIMIT = 32


def _naive_w(m_prime):
    """int_0^pi sin(theta) e^{i m' theta} d(theta), written out locally."""
    if m_prime == 1:
        return complex(0.0, math.pi / 2.0)
    if m_prime == -1:
        return complex(0.0, -math.pi / 2.0)
    if m_prime % 2:
        return 0j
    return complex(2.0 / (1.0 - m_prime * m_prime))


def naive_basis_value(ell, m, spin, theta, phi):
    """One spin basis function value, straight from the definition.

    (-1)^s sqrt((2l+1)/4pi) e^{i m phi} d^l_{m,-s}(theta), the rotation-
    matrix conjugate with the third Euler angle zero.
    """
    if not (abs(m) <= ell and abs(spin) <= ell):
        raise ContractViolationError(
            f"orders (m={m}, spin={spin}) must lie within degree {ell}"
        )
    d = plane_jacobi(ell, theta).value(m, -spin)
    sign = -1.0 if spin % 2 else 1.0
    return (
        sign * math.sqrt((2 * ell + 1) / (4.0 * math.pi))
        * cmath.exp(1j * m * phi) * d
    )


def _check_cap(L):
    if L > NAIVE_BAND_LIMIT:
        raise UnsupportedDegreeError(
            f"the reference transforms stop at L={NAIVE_BAND_LIMIT}, got {L}"
        )


def naive_inverse(coeffs):
    """Signal samples by explicit basis summation over every (l, m).

    O(L^4) and slower; one closed-form plane per (ring, degree) pair.
    """
    L = coeffs.band_limit
    spin = coeffs.spin
    _check_cap(L)
    sign = -1.0 if spin % 2 else 1.0
    thetas = np.pi * (2 * np.arange(L) + 1) / (2 * L - 1)
    phis = 2.0 * np.pi * np.arange(2 * L - 1) / (2 * L - 1)
    m_all = np.arange(-(L - 1), L)
    # ring_m[t, m] = sum_l f_lm (-1)^s sqrt((2l+1)/4pi) d^l_{m,-s}(theta_t)
    ring_m = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    for t in range(L):
        for ell in range(abs(spin), L):
            plane = plane_jacobi(ell, thetas[t])
            cl = sign * math.sqrt((2 * ell + 1) / (4.0 * math.pi))
            for m in range(-ell, ell + 1):
                flm = coeffs.values[ell * (ell + 1) + m]
                ring_m[t, L - 1 + m] += flm * cl * plane.values[ell + m, ell - spin]
    basis = np.exp(1j * np.outer(phis, m_all))
    samples = ring_m @ basis.T
    return MwSignal(L, spin, samples)


def naive_forward(signal):
    """Coefficients by direct sums through the same five-stage chain.

    Azimuthal DFT, reflected extension, colatitude DFT, the convolution
    against the weights as a literal double sum, and the closing plane
    contraction over the full m' range with closed-form Wigner values.
    """
    L = signal.band_limit
    spin = signal.spin
    _check_cap(L)
    N = 2 * L - 1
    m_all = np.arange(-(L - 1), L)
    thetas_ext = np.pi * (2 * np.arange(N) + 1) / N
    phis = 2.0 * np.pi * np.arange(N) / N

    # G_m(theta_t) = (2 pi / N) sum_p f(theta_t, phi_p) e^{-i m phi_p}
    gm = np.zeros((L, N), dtype=np.complex128)
    for t in range(L):
        for j, m in enumerate(m_all):
            gm[t, j] = np.sum(signal.samples[t] * np.exp(-1j * m * phis))
    gm *= 2.0 * math.pi / N

    # extension: rows L .. 2L-2 pick up (-1)^(m+s) from the reflection
    ext = np.zeros((N, N), dtype=np.complex128)
    ext[:L] = gm
    for t in range(L, N):
        for j, m in enumerate(m_all):
            par = -1.0 if (m + spin) % 2 else 1.0
            ext[t, j] = par * gm[2 * L - 2 - t, j]

    # F_mm' = (1/(2 pi N)) sum_t G~_m(theta_t) e^{-i m' theta_t}
    fmm = np.zeros((N, N), dtype=np.complex128)
    for j, m in enumerate(m_all):
        for k, mp in enumerate(m_all):
            fmm[j, k] = np.sum(ext[:, j] * np.exp(-1j * mp * thetas_ext))
    fmm /= 2.0 * math.pi * N

    # G_mm' = 2 pi sum_k F_mk w(k - m'), no padding, straight double sum
    gmm = np.zeros((N, N), dtype=np.complex128)
    for j in range(N):
        for kp, mp in enumerate(m_all):
            acc = 0j
            for k, mk in enumerate(m_all):
                acc += fmm[j, k] * _naive_w(mk - mp)
            gmm[j, kp] = 2.0 * math.pi * acc

    # f_lm = (-1)^s i^(m+s) sqrt((2l+1)/4pi) sum_m' D_m'm D_m'-s G_mm'
    values = np.zeros(L * L, dtype=np.complex128)
    sign = -1.0 if spin % 2 else 1.0
    for ell in range(abs(spin), L):
        delta = plane_jacobi(ell, math.pi / 2.0)
        cl = math.sqrt((2 * ell + 1) / (4.0 * math.pi))
        for m in range(-ell, ell + 1):
            acc = 0j
            for mp in range(-ell, ell + 1):
                acc += (
                    delta.values[ell + mp, ell + m]
                    * delta.values[ell + mp, ell - spin]
                    * gmm[L - 1 + m, L - 1 + mp]
                )
            values[ell * (ell + 1) + m] = (
                sign * 1j ** ((m + spin) % 4) * cl * acc
            )
    return HarmonicCoeffs(L, spin, values)
