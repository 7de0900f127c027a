"""Shared construction helpers for the test suite."""

import numpy as np

from torusht import HarmonicCoeffs


def random_coeffs(band_limit, spin, seed=0):
    """Uniform complex coefficients with the l < |spin| block zeroed."""
    rng = np.random.default_rng(seed)
    n = band_limit * band_limit
    values = rng.uniform(-1.0, 1.0, n) + 1j * rng.uniform(-1.0, 1.0, n)
    values[: spin * spin] = 0.0
    return HarmonicCoeffs(band_limit, spin, values)


def random_real_coeffs(band_limit, seed=0):
    """Spin-0 coefficients carrying the conjugate symmetry of a real signal."""
    rng = np.random.default_rng(seed)
    values = np.zeros(band_limit * band_limit, dtype=np.complex128)
    for ell in range(band_limit):
        base = ell * (ell + 1)
        values[base] = rng.uniform(-1.0, 1.0)
        for m in range(1, ell + 1):
            z = rng.uniform(-1.0, 1.0) + 1j * rng.uniform(-1.0, 1.0)
            values[base + m] = z
            values[base - m] = np.conj(z) if m % 2 == 0 else -np.conj(z)
    return HarmonicCoeffs(band_limit, 0, values)


def max_abs(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
