"""Exact quadrature on the sphere from the torus-extension weights.

Three weight layers build on each other:

* ``weight_w``: the closed-form integrals w(m') = int_0^pi sin(theta)
  e^{i m' theta} d(theta), nonzero only at m' = +-1 and even m'.
* ``ring_weights_v``: the inverse DFT of the reflected w sequence over the
  2L-1 extended colatitudes; a band-limited stand-in for sin(theta) on
  [0, pi) and for zero on [pi, 2pi).
* ``quad_weights_q``: v folded back onto the L physical rings with the
  spin parity sign, skipping the self-reflective ring at theta = pi.

With q in hand, a function band-limited at L is integrated exactly over
the sphere from only L x L samples: L rings times L azimuths
phi'_p = 2 pi p / L, about half the sample count the full transform grid
uses. ``integrate`` applies that rule.

v and q are kept complex so cancellation failures surface as a raised
error instead of a silently dropped imaginary part.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, SymmetryError
from .grid import check_band_limit
from .wigner import plane_risbo

_IMAG_GUARD = 1e-12


@dataclass(frozen=True)
class QuadWeights:
    """Weight set for one (band_limit, spin) pair.

    ``w`` covers m' in [-2(L-1), 2(L-1)] (offset 2(L-1)), ``v`` the 2L-1
    extended rings, ``q`` the L physical rings.
    """

    band_limit: int
    spin: int
    w: np.ndarray
    v: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        self.w.flags.writeable = False
        self.v.flags.writeable = False
        self.q.flags.writeable = False


def weight_w(m_prime):
    """w(m') = int_0^pi sin(theta) e^{i m' theta} d(theta), exactly."""
    m = int(m_prime)
    if m == 1:
        return complex(0.0, math.pi / 2.0)
    if m == -1:
        return complex(0.0, -math.pi / 2.0)
    if m % 2:
        return 0j
    return complex(2.0 / (1.0 - m * m))


def _w_array(m_primes):
    """weight_w evaluated over an integer array."""
    mp = np.asarray(m_primes)
    out = np.zeros(mp.shape, dtype=np.complex128)
    even = mp % 2 == 0
    out[even] = 2.0 / (1.0 - mp[even].astype(np.float64) ** 2)
    out[mp == 1] = 0.5j * math.pi
    out[mp == -1] = -0.5j * math.pi
    return out


def ring_weights_v(band_limit):
    """Ring weights v(theta_t) over the 2L-1 extended colatitudes.

    v(theta_t) = (1/(2L-1)) sum_{|m'|<=L-1} w(-m') e^{i m' theta_t},
    evaluated as one inverse FFT. theta_t = theta_0 + 2 pi t/(2L-1) with
    theta_0 = pi/(2L-1), so the offset enters as a phase twist on the
    spectrum before the transform.
    """
    check_band_limit(band_limit)
    L = int(band_limit)
    mp = np.arange(-(L - 1), L)
    theta0 = math.pi / (2 * L - 1)
    spectrum = _w_array(-mp) * np.exp(1j * mp * theta0)
    v = np.fft.ifft(np.fft.ifftshift(spectrum))
    _check_imag(v, "ring weights v")
    return v


def quad_weights_q(band_limit, spin):
    """Spherical quadrature weights q(theta_t) over the L physical rings.

    q(theta_t) = (2 pi / L) [v(theta_t) + (-1)^s v(theta_{2L-2-t})], the
    reflected term dropped at t = L-1 where the ring reflects onto itself.
    """
    check_band_limit(band_limit)
    L = int(band_limit)
    v = ring_weights_v(L)
    q = v[:L].copy()
    if L > 1:
        sign = -1.0 if spin % 2 else 1.0
        q[: L - 1] += sign * v[2 * L - 2 : L - 1 : -1]
    q *= 2.0 * math.pi / L
    _check_imag(q, "quadrature weights q")
    return q


def quad_weights(band_limit, spin=0):
    """Bundle w, v, and q for one (band_limit, spin) pair."""
    check_band_limit(band_limit)
    L = int(band_limit)
    mp = np.arange(-2 * (L - 1), 2 * (L - 1) + 1)
    return QuadWeights(L, spin, _w_array(mp), ring_weights_v(L), quad_weights_q(L, spin))


def integrate(samples, weights):
    """Integrate band-limited samples on the reduced L x L grid.

    ``samples[t, p]`` holds f(theta_t, phi'_p) with phi'_p = 2 pi p / L;
    the result equals the integral of f over the sphere exactly for f
    band-limited at the weights' band-limit.
    """
    f = np.asarray(samples)
    L = weights.band_limit
    if f.shape != (L, L):
        raise ContractViolationError(
            f"samples must have shape ({L}, {L}) for band limit {L}, "
            f"got {f.shape}"
        )
    return complex(np.sum(f.sum(axis=1) * weights.q))


def distinct_point_count(band_limit):
    """Distinct sphere locations in the L x L quadrature grid.

    The double sum runs over L^2 grid entries, but the last ring sits at
    theta = pi where all L azimuths coincide, so L^2 - (L-1) = L(L-1)+1
    locations are distinct.
    """
    check_band_limit(band_limit)
    L = int(band_limit)
    return L * (L - 1) + 1


def harmonic_integral(ell, spin):
    """Integral over the sphere of the spin basis function with m = 0.

    Every m != 0 basis function integrates to zero by azimuthal symmetry;
    this value times the m = 0 coefficients gives the exact integral of
    any band-limited spin signal, which makes it the reference the
    quadrature rule is checked against. Evaluated from the Fourier series
    of the polar functions, whose theta integral picks up exactly the
    closed-form w weights.
    """
    if ell < 0:
        raise ContractViolationError(f"degree must be >= 0, got {ell}")
    if abs(spin) > ell:
        return 0j
    delta = None
    for el in range(ell + 1):
        delta = plane_risbo(el, math.pi / 2.0, delta)
    mp = np.arange(-ell, ell + 1)
    series = np.sum(
        delta.values[:, ell] * delta.values[:, ell - spin] * _w_array(mp)
    )
    sign = -1.0 if spin % 2 else 1.0
    phase = 1j ** ((-spin) % 4)
    return complex(
        sign * math.sqrt((2 * ell + 1) / (4.0 * math.pi)) * 2.0 * math.pi
        * phase * series
    )


def to_csv(weights):
    """CSV block of the weight profile: theta, v, q, sin(theta), q - sin(theta).

    One row per extended ring (2L-1 rows); the q columns are blank on the
    reflected rings t >= L where q is not defined.
    """
    L = weights.band_limit
    _check_imag(weights.v, "ring weights v")
    _check_imag(weights.q, "quadrature weights q")
    lines = ["theta,v,q,sin_theta,q_minus_sin"]
    for t in range(2 * L - 1):
        theta = math.pi * (2 * t + 1) / (2 * L - 1)
        v = weights.v[t].real
        st = math.sin(theta)
        if t < L:
            q = weights.q[t].real
            lines.append(f"{theta:.17g},{v:.17g},{q:.17g},{st:.17g},{q - st:.17g}")
        else:
            lines.append(f"{theta:.17g},{v:.17g},,{st:.17g},")
    return "\n".join(lines) + "\n"


def _check_imag(values, label):
    peak = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if peak > _IMAG_GUARD:
        raise SymmetryError(
            f"{label} should be real to rounding, found imaginary part {peak:.3e}"
        )
