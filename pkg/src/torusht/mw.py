"""Spin spherical harmonic transforms on the equiangular grid.

The forward transform runs the sampled signal through five stages, each
exposed as its own operation so it can be tested against a direct
summation:

1. ``phi_fft``: per-ring FFT over azimuth.
2. ``periodic_extend``: reflect the rings onto the doubled colatitude
   range with the (-1)^(m+s) parity sign, turning the sphere into a torus.
3. ``theta_fft``: FFT over the extended colatitude, with the phase twist
   the half-sample grid offset forces.
4. ``weighted_convolution``: apply the implicit quadrature as a reflected
   convolution against the closed-form weights on a zero-padded ring.
5. ``assemble_flm``: contract with the pi/2 Wigner planes degree by
   degree.

The inverse runs the mirror pipeline (``compute_Fmm`` then two FFTs),
computing the extended rows and discarding the reflected half. Both
directions are exact for band-limited inputs up to rounding; no
precomputed tables are kept, each Wigner plane is generated and consumed
inside the degree loop.

``forward_real``/``inverse_real`` are the spin-0 fast paths: they carry
only m >= 0 through the pipeline and reconstruct the rest from conjugate
symmetry, for about half the work.

All FFTs use the unnormalized e^{-i...} forward convention with scale
factors applied explicitly, so every stage matches its defining sum
one-to-one.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, InvalidSpinError, SymmetryError
from .grid import check_band_limit
from .kernels import flm_core, flm_core_real, fmm_core, fmm_core_real
from .quadrature import _w_array
from .wigner import plane_risbo, plane_trapani

_RECURSIONS = ("trapani", "risbo")


@dataclass(frozen=True)
class HarmonicCoeffs:
    """Coefficients ..f_lm as a flat complex array of length L^2.

    Flat index l(l+1)+m for 0 <= l < L, |m| <= l. Entries with l < |spin|
    are identically zero; construction rejects anything else.
    """

    band_limit: int
    spin: int
    values: np.ndarray

    def __post_init__(self):
        check_band_limit(self.band_limit)
        L = self.band_limit
        if self.values.shape != (L * L,):
            raise ContractViolationError(
                f"coefficients for L={L} must have shape ({L * L},), "
                f"got {self.values.shape}"
            )
        lead = min(self.spin * self.spin, L * L)
        if np.any(self.values[:lead] != 0):
            raise ContractViolationError(
                f"coefficients with degree below |spin|={abs(self.spin)} "
                "must be exactly zero"
            )
        self.values.flags.writeable = False

    def value(self, ell, m):
        """Coefficient at (ell, m)."""
        if not (0 <= ell < self.band_limit and abs(m) <= ell):
            raise ContractViolationError(
                f"(ell, m) = ({ell}, {m}) out of range for L={self.band_limit}"
            )
        return self.values[ell * (ell + 1) + m]


@dataclass(frozen=True)
class MwSignal:
    """Samples on the L x (2L-1) grid, theta rows by phi columns."""

    band_limit: int
    spin: int
    samples: np.ndarray

    def __post_init__(self):
        check_band_limit(self.band_limit)
        L = self.band_limit
        if self.samples.shape != (L, 2 * L - 1):
            raise ContractViolationError(
                f"signal for L={L} must have shape ({L}, {2 * L - 1}), "
                f"got {self.samples.shape}"
            )
        self.samples.flags.writeable = False


@dataclass(frozen=True)
class FourierPlane:
    """2D Fourier coefficients, m rows by m' columns, both offset L-1."""

    band_limit: int
    spin: int
    values: np.ndarray

    def __post_init__(self):
        check_band_limit(self.band_limit)
        side = 2 * self.band_limit - 1
        if self.values.shape != (side, side):
            raise ContractViolationError(
                f"Fourier plane for L={self.band_limit} must have shape "
                f"({side}, {side}), got {self.values.shape}"
            )
        self.values.flags.writeable = False


def _check_spin(band_limit, spin):
    if abs(spin) >= band_limit:
        raise InvalidSpinError(
            f"|spin| must be below the band limit, got spin={spin} at "
            f"L={band_limit}"
        )


def _parity_signs(L, spin):
    """(-1)^(m+s) over m = -(L-1) .. L-1."""
    m = np.arange(-(L - 1), L)
    return np.where((m + spin) % 2 == 0, 1.0, -1.0)


_I_POWERS = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])


def _im_phase(L, spin, sign):
    """i^(sign*(m+s)) over m = -(L-1) .. L-1, exact unit values."""
    m = np.arange(-(L - 1), L)
    return _I_POWERS[(sign * (m + spin)) % 4]


def _cl(L):
    """sqrt((2l+1)/4pi) over l = 0 .. L-1."""
    return np.sqrt((2.0 * np.arange(L) + 1.0) / (4.0 * math.pi))


def phi_fft(signal):
    """Per-ring azimuthal Fourier coefficients G_m(theta_t).

    Returns a (L, 2L-1) complex array indexed [t, L-1+m] with
    G_m(theta_t) = (2 pi/(2L-1)) sum_p f(theta_t, phi_p) e^{-i m phi_p}.
    """
    L = signal.band_limit
    out = np.fft.fftshift(np.fft.fft(signal.samples, axis=1), axes=1)
    out *= 2.0 * math.pi / (2 * L - 1)
    return out


def periodic_extend(gm, spin):
    """Extend ring coefficients from L rows to the 2L-1 torus rows.

    Rows t >= L hold (-1)^(m+s) G_m(theta_{2L-2-t}); for m+s even this is
    a plain reflection through theta = pi.
    """
    gm = np.asarray(gm)
    L = gm.shape[0]
    if gm.shape != (L, 2 * L - 1):
        raise ContractViolationError(
            f"ring coefficients must have shape (L, 2L-1), got {gm.shape}"
        )
    out = np.empty((2 * L - 1, 2 * L - 1), dtype=np.complex128)
    out[:L] = gm
    if L > 1:
        out[L:] = gm[L - 2 :: -1, :] * _parity_signs(L, spin)[None, :]
    return out


def _theta_transform(ext):
    """Colatitude FFT with the half-sample phase twist and 1/(2pi N) scale.

    Takes rows t = 0 .. 2L-2, returns rows m' in [-(L-1), L-1]; columns
    pass through untouched.
    """
    N = ext.shape[0]
    L = (N + 1) // 2
    theta0 = math.pi / N
    mp = np.arange(-(L - 1), L)
    raw = np.fft.fftshift(np.fft.fft(ext, axis=0), axes=0)
    raw *= (np.exp(-1j * mp * theta0) / (2.0 * math.pi * N))[:, None]
    return raw


def theta_fft(extended, spin):
    """Fourier coefficients F_mm' from the extended rings.

    F_mm' = (1/(2 pi (2L-1))) sum_t G~_m(theta_t) e^{-i m' theta_t}; the
    sample offset theta_0 = pi/(2L-1) shows up as a phase rotation on the
    plain FFT output.
    """
    ext = np.asarray(extended)
    N = ext.shape[0]
    if ext.ndim != 2 or ext.shape[1] != N or N % 2 == 0:
        raise ContractViolationError(
            f"extended rings must form a (2L-1, 2L-1) array, got {ext.shape}"
        )
    L = (N + 1) // 2
    return FourierPlane(L, spin, _theta_transform(ext).T.copy())


def weighted_convolution(fmm):
    """Apply the implicit quadrature: G_mm' = 2 pi sum_k F_mk w(k - m').

    The sum is a linear correlation of the 2L-1 wide F rows with the
    4L-3 wide weight support. Small band-limits evaluate it as one dense
    matrix product; past the break-even it runs by FFT at a padded
    5-smooth length, where padding past the 6L-5 full support cannot
    alias. Both give the same values to rounding.
    """
    L = fmm.band_limit
    return FourierPlane(L, fmm.spin, _convolve_rows(fmm.values, L))


_CONV_CACHE = {}
_DIRECT_CONV_LIMIT = 128


def _conv_operator(L):
    op = _CONV_CACHE.get(L)
    if op is None:
        if L <= _DIRECT_CONV_LIMIT:
            mp = np.arange(-(L - 1), L)
            data = _w_array(mp[:, None] - mp[None, :])
        else:
            M = _fast_len(6 * L - 5)
            data = np.fft.fft(_w_array(np.arange(2 * (L - 1), -2 * L + 1, -1)), n=M)
        data *= 2.0 * math.pi
        op = (L <= _DIRECT_CONV_LIMIT, data)
        _CONV_CACHE[L] = op
    return op


def _convolve_rows(frows, L):
    """G(m') rows from F(m'') rows, for any leading row count."""
    direct, data = _conv_operator(L)
    if direct:
        return frows @ data
    M = data.shape[0]
    gfull = np.fft.ifft(np.fft.fft(frows, n=M, axis=1) * data[None, :], axis=1)
    return gfull[:, 2 * L - 2 : 4 * L - 3].copy()


def _fast_len(n):
    """Smallest 5-smooth integer >= n."""
    best = 1
    while best < n:
        best *= 2
    p5 = 1
    while p5 < best:
        p3 = p5
        while p3 < best:
            p2 = p3
            while p2 < n:
                p2 *= 2
            if n <= p2 < best:
                best = p2
            p3 *= 3
        p5 *= 5
    return best


def _fold_mprime(gv, L, spin):
    """Collapse the m' sum to m' >= 0 using the plane's column symmetry.

    The degree-dependent signs of the negative-m' Wigner entries cancel
    between the two Delta factors, leaving the degree-free fold
    gfold[m, j] = G[m, j] + (-1)^(m+s) G[m, -j] (the j = 0 column passes
    through once).
    """
    fold = np.empty((2 * L - 1, L), dtype=np.complex128)
    fold[:, 0] = gv[:, L - 1]
    if L > 1:
        fold[:, 1:] = gv[:, L:] + _parity_signs(L, spin)[:, None] * gv[:, L - 2 :: -1]
    return fold


def _delta_quadrant(plane, ell):
    """m' >= 0 rows of a validated pi/2 plane."""
    if plane.ell != ell:
        raise ContractViolationError(
            f"expected plane for degree {ell}, got {plane.ell}"
        )
    if plane.beta != math.pi / 2.0:
        raise ContractViolationError("transform planes must be at beta = pi/2")
    return plane.values[ell:, :]


def assemble_flm(gmm, deltas=None, recursion="trapani"):
    """Contract the convolved plane down to harmonic coefficients.

    ..f_lm = (-1)^s i^(m+s) sqrt((2l+1)/4pi) sum_m' D_m'm D_m'-s G_mm'.
    With ``deltas = None`` (the usual case) the pi/2 planes are generated
    inside a fused kernel; passing an iterable of planes for l = 0..L-1
    runs the same contraction against those instead. Coefficients with
    l < |spin| are identically zero on output.
    """
    L = gmm.band_limit
    spin = gmm.spin
    _check_spin(L, spin)
    _check_recursion(recursion)
    gfold = _fold_mprime(gmm.values, L, spin)
    if deltas is None:
        R = flm_core(gfold, L, spin, recursion == "trapani")
    else:
        R = _flm_from_planes(gfold, L, spin, deltas)
    out2d = R * (_cl(L)[:, None] * _im_phase(L, spin, +1)[None, :])
    if spin % 2:
        out2d = -out2d
    return HarmonicCoeffs(L, spin, _flatten(out2d, L))


def _flm_from_planes(gfold, L, spin, deltas):
    R = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    cs = abs(spin)
    for ell, plane in zip(range(L), deltas):
        quad = _delta_quadrant(plane, ell)
        if ell < cs:
            continue
        ds = quad[:, ell - spin].copy()
        block = quad * ds[:, None]
        R[ell, L - 1 - ell : L + ell] = np.einsum(
            "pj,jp->j", block, gfold[L - 1 - ell : L + ell, : ell + 1]
        )
    return R


_LAYOUT_CACHE = {}


def _layout(L):
    """Row/column gather maps between flat l(l+1)+m and (l, L-1+m)."""
    maps = _LAYOUT_CACHE.get(L)
    if maps is None:
        ell = np.arange(L)
        rows = np.repeat(ell, 2 * ell + 1)
        cols = np.arange(L * L) - rows * rows + (L - 1 - rows)
        maps = (rows, cols)
        _LAYOUT_CACHE[L] = maps
    return maps


def _flatten(out2d, L):
    rows, cols = _layout(L)
    return out2d[rows, cols]


def _unflatten(values, L):
    out = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    rows, cols = _layout(L)
    out[rows, cols] = values
    return out


def forward(signal, recursion="trapani"):
    """Harmonic coefficients of a sampled signal.

    Exact (to rounding) when the signal is band-limited at its declared
    band-limit. O(L^3) total; the FFT stages are O(L^2 log L).
    """
    _check_spin(signal.band_limit, signal.spin)
    gm = phi_fft(signal)
    ext = periodic_extend(gm, signal.spin)
    fmm = theta_fft(ext, signal.spin)
    return assemble_flm(weighted_convolution(fmm), recursion=recursion)


def compute_Fmm(coeffs, deltas=None, recursion="trapani"):
    """Fourier plane of the inverse transform.

    F_mm' = (-1)^s i^(-(m+s)) sum_l sqrt((2l+1)/4pi) D_m'm D_m'-s ..f_lm,
    computed directly for m' >= 0 and filled for m' < 0 through the plane
    symmetry F_m,-m' = (-1)^(m+s) F_m,m'. ``deltas``/``recursion`` as in
    ``assemble_flm``.
    """
    L = coeffs.band_limit
    spin = coeffs.spin
    _check_spin(L, spin)
    _check_recursion(recursion)
    flm2d = _unflatten(coeffs.values, L)
    if deltas is None:
        T = fmm_core(flm2d, _cl(L), L, spin, recursion == "trapani")
    else:
        T = _fmm_from_planes(flm2d, L, spin, deltas)
    phase = _im_phase(L, spin, -1)
    if spin % 2:
        phase = -phase
    values = np.empty((2 * L - 1, 2 * L - 1), dtype=np.complex128)
    values[:, L - 1 :] = T.T * phase[:, None]
    if L > 1:
        values[:, : L - 1] = (values[:, L:] * _parity_signs(L, spin)[:, None])[:, ::-1]
    return FourierPlane(L, spin, values)


def _fmm_from_planes(flm2d, L, spin, deltas):
    T = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    cl = _cl(L)
    cs = abs(spin)
    for ell, plane in zip(range(L), deltas):
        quad = _delta_quadrant(plane, ell)
        if ell < cs:
            continue
        ds = quad[:, ell - spin]
        block = quad * (cl[ell] * ds)[:, None]
        T[: ell + 1, L - 1 - ell : L + ell] += block * flm2d[ell, L - 1 - ell : L + ell][None, :]
    return T


def inverse(coeffs, recursion="trapani"):
    """Sampled signal of the given harmonic coefficients.

    Builds the Fourier plane, synthesizes the extended colatitude rows by
    FFT (with the grid-offset phase), keeps the physical rows t < L, and
    synthesizes azimuth by a second FFT.
    """
    L = coeffs.band_limit
    spin = coeffs.spin
    _check_spin(L, spin)
    lead = spin * spin
    if np.any(coeffs.values[:lead] != 0):
        raise ContractViolationError(
            f"coefficients with degree below |spin|={abs(spin)} must be zero "
            "on input to the inverse transform"
        )
    fp = compute_Fmm(coeffs, recursion=recursion)
    rows = _theta_synthesis(fp.values, L)[:, :L]
    samples = np.fft.ifft(np.fft.ifftshift(rows, axes=0), axis=0)
    return MwSignal(L, spin, samples.T * (2 * L - 1))


def _theta_synthesis(values, L):
    """Rows F_m(theta_t) over the extended t range from F_mm' columns."""
    theta0 = math.pi / (2 * L - 1)
    mp = np.arange(-(L - 1), L)
    spect = values * (np.exp(1j * mp * theta0) * (2 * L - 1))[None, :]
    return np.fft.ifft(np.fft.ifftshift(spect, axes=1), axis=1)


def synthesize_reduced(coeffs, recursion="trapani"):
    """Samples on the reduced grid (theta_t, 2 pi p / L), p = 0 .. L-1.

    The quadrature needs only L azimuth points per ring instead of the
    grid's 2L-1. On rings that short, orders differing by L land on the
    same DFT bin, so the synthesis folds them by residue before the short
    azimuthal FFT and stays exact. Returns an (L, L) complex array
    accepted by ``integrate``.
    """
    L = coeffs.band_limit
    _check_spin(L, coeffs.spin)
    fp = compute_Fmm(coeffs, recursion=recursion)
    rows = _theta_synthesis(fp.values, L)[:, :L]
    m = np.arange(-(L - 1), L)
    bins = np.zeros((L, L), dtype=np.complex128)
    np.add.at(bins, m % L, rows)
    samples = np.fft.ifft(bins, axis=0) * L
    return samples.T.copy()


def forward_real(signal, recursion="trapani"):
    """Spin-0 forward transform of a real signal at about half the work.

    Only orders m >= 0 travel through the pipeline; m < 0 coefficients
    come from the reality condition conj(f_lm) = (-1)^m f_l,-m. Output
    matches ``forward`` on the complexified signal.
    """
    if signal.spin != 0:
        raise InvalidSpinError(
            f"the real-signal path supports spin 0 only, got {signal.spin}"
        )
    samples = signal.samples
    if np.iscomplexobj(samples):
        if np.any(samples.imag != 0):
            raise ContractViolationError(
                "real-path input must have identically zero imaginary part"
            )
        samples = samples.real
    L = signal.band_limit
    _check_recursion(recursion)
    gm = np.fft.rfft(samples, axis=1) * (2.0 * math.pi / (2 * L - 1))
    ext = np.empty((2 * L - 1, L), dtype=np.complex128)
    ext[:L] = gm
    if L > 1:
        signs = np.where(np.arange(L) % 2 == 0, 1.0, -1.0)
        ext[L:] = gm[L - 2 :: -1, :] * signs[None, :]
    fhalf = _theta_transform(ext).T
    ghalf = _convolve_rows(fhalf, L)
    gfold = _fold_mprime_half(ghalf, L)
    R = flm_core_real(gfold, L, recursion == "trapani")
    phase = _I_POWERS[np.arange(L) % 4]
    half = R * (_cl(L)[:, None] * phase[None, :])
    return HarmonicCoeffs(L, 0, _flatten(_mirror_half(half, L), L))


def _fold_mprime_half(ghalf, L):
    """m' fold for spin-0 rows m = 0 .. L-1."""
    fold = np.empty((L, L), dtype=np.complex128)
    fold[:, 0] = ghalf[:, L - 1]
    if L > 1:
        signs = np.where(np.arange(L) % 2 == 0, 1.0, -1.0)
        fold[:, 1:] = ghalf[:, L:] + signs[:, None] * ghalf[:, L - 2 :: -1]
    return fold


def _mirror_half(half, L):
    """Rebuild the (L, 2L-1) coefficient table from its m >= 0 half."""
    out2d = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    out2d[:, L - 1 :] = half
    if L > 1:
        signs = np.where(np.arange(1, L) % 2 == 0, 1.0, -1.0)
        out2d[:, : L - 1] = (np.conj(half[:, 1:]) * signs[None, :])[:, ::-1]
    return out2d


def inverse_real(coeffs, recursion="trapani"):
    """Spin-0 inverse transform onto real samples.

    Requires the reality condition conj(f_lm) = (-1)^m f_l,-m to hold to
    1e-12 (scaled by the coefficient magnitude); violations raise rather
    than silently projecting. Returns a signal with real float samples.
    """
    if coeffs.spin != 0:
        raise InvalidSpinError(
            f"the real-signal path supports spin 0 only, got {coeffs.spin}"
        )
    L = coeffs.band_limit
    _check_recursion(recursion)
    flm2d = _unflatten(coeffs.values, L)
    signs = np.where((np.arange(-(L - 1), L)) % 2 == 0, 1.0, -1.0)
    residual = np.conj(flm2d) - signs[None, :] * flm2d[:, ::-1]
    peak = float(np.max(np.abs(coeffs.values))) if coeffs.values.size else 0.0
    tol = 1e-12 * max(1.0, peak)
    worst = float(np.max(np.abs(residual)))
    if worst > tol:
        raise SymmetryError(
            f"coefficients violate the reality condition by {worst:.3e} "
            f"(tolerance {tol:.3e})"
        )
    half = np.ascontiguousarray(flm2d[:, L - 1 :])
    T = fmm_core_real(half, _cl(L), L, recursion == "trapani")
    phase = _I_POWERS[(-np.arange(L)) % 4]
    fhalf = T.T * phase[:, None]
    full = np.empty((L, 2 * L - 1), dtype=np.complex128)
    full[:, L - 1 :] = fhalf
    if L > 1:
        msigns = np.where(np.arange(L) % 2 == 0, 1.0, -1.0)
        full[:, : L - 1] = (full[:, L:] * msigns[:, None])[:, ::-1]
    rows = _theta_synthesis(full, L)[:, :L]
    samples = np.fft.irfft(rows.T, n=2 * L - 1, axis=1, norm="forward")
    return MwSignal(L, 0, samples)


def _check_recursion(recursion):
    if recursion not in _RECURSIONS:
        raise ValueError(
            f"recursion must be one of {_RECURSIONS}, got {recursion!r}"
        )


def delta_planes(L, method="risbo"):
    """Generate the pi/2 Wigner planes for l = 0 .. L-1, lazily.

    Convenience source for the explicit ``deltas`` argument of
    ``assemble_flm``/``compute_Fmm``.
    """
    _check_recursion(method)
    prev = None
    for ell in range(L):
        if method == "trapani":
            prev = plane_trapani(ell, prev)
        else:
            prev = plane_risbo(ell, math.pi / 2.0, prev)
        yield prev
