"""Binary file formats for coefficients and sampled signals.

Both formats share one 14-byte header:

    magic    4 bytes  `SSHC` (coefficients) or `SSHS` (signal)
    version  u8       1
    L        u32 le   band limit
    spin     i32 le   spin
    grid     u8       0 = equiangular, 1 = Gauss-Legendre

followed by the payload as little-endian complex128 values, each a
(re, im) pair of IEEE-754 doubles: L^2 coefficients in flat-index order,
or L(2L-1) samples row-major (theta outer, phi inner).
"""

import struct

import numpy as np

from .errors import ContractViolationError
from .mw import HarmonicCoeffs, MwSignal

MAGIC_COEFFS = b"SSHC"
MAGIC_SIGNAL = b"SSHS"
FORMAT_VERSION = 1

_GRID_CODES = {"mw": 0, "gl": 1}
_GRID_NAMES = {0: "mw", 1: "gl"}
_HEADER = struct.Struct("<4sBIiB")


def _pack_header(magic, band_limit, spin, grid):
    if grid not in _GRID_CODES:
        raise ContractViolationError(
            f"grid must be one of {sorted(_GRID_CODES)}, got {grid!r}"
        )
    return _HEADER.pack(magic, FORMAT_VERSION, band_limit, spin, _GRID_CODES[grid])


def _unpack_header(data, magic, path):
    if len(data) < _HEADER.size:
        raise ContractViolationError(f"{path}: truncated header")
    got, version, L, spin, grid = _HEADER.unpack_from(data)
    if got != magic:
        raise ContractViolationError(
            f"{path}: expected magic {magic!r}, found {got!r}"
        )
    if version != FORMAT_VERSION:
        raise ContractViolationError(
            f"{path}: unsupported format version {version}"
        )
    if grid not in _GRID_NAMES:
        raise ContractViolationError(f"{path}: unknown grid code {grid}")
    return L, spin, _GRID_NAMES[grid]


def _payload(data, count, path):
    body = data[_HEADER.size :]
    if len(body) != 16 * count:
        raise ContractViolationError(
            f"{path}: expected {16 * count} payload bytes, found {len(body)}"
        )
    return np.frombuffer(body, dtype="<c16").astype(np.complex128)


def save_coeffs(path, coeffs, grid="mw"):
    """Write harmonic coefficients to a `SSHC` file."""
    header = _pack_header(MAGIC_COEFFS, coeffs.band_limit, coeffs.spin, grid)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(coeffs.values, dtype="<c16").tobytes())


def load_coeffs(path):
    """Read a `SSHC` file; returns (HarmonicCoeffs, grid name)."""
    with open(path, "rb") as fh:
        data = fh.read()
    L, spin, grid = _unpack_header(data, MAGIC_COEFFS, path)
    values = _payload(data, L * L, path)
    return HarmonicCoeffs(L, spin, values), grid


def save_signal(path, samples, spin, grid="mw"):
    """Write sampled-signal values to a `SSHS` file.

    ``samples`` is the (L, 2L-1) array (an ``MwSignal`` works too, in
    which case ``spin`` must match it).
    """
    if isinstance(samples, MwSignal):
        if spin != samples.spin:
            raise ContractViolationError(
                f"spin {spin} does not match the signal's spin {samples.spin}"
            )
        samples = samples.samples
    arr = np.asarray(samples)
    if arr.ndim != 2 or arr.shape[1] != 2 * arr.shape[0] - 1:
        raise ContractViolationError(
            f"samples must have shape (L, 2L-1), got {arr.shape}"
        )
    header = _pack_header(MAGIC_SIGNAL, arr.shape[0], spin, grid)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(arr, dtype="<c16").tobytes())


def load_signal(path):
    """Read a `SSHS` file; returns (samples array, spin, grid name)."""
    with open(path, "rb") as fh:
        data = fh.read()
    L, spin, grid = _unpack_header(data, MAGIC_SIGNAL, path)
    samples = _payload(data, L * (2 * L - 1), path).reshape(L, 2 * L - 1)
    return samples, spin, grid
