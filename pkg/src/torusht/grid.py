"""Equiangular sample grid on the sphere.

For band-limit L the grid has L iso-latitude rings of 2L-1 samples each:

    theta_t = pi (2t + 1) / (2L - 1),  t = 0 .. L-1
    phi_p   = 2 pi p / (2L - 1),       p = 0 .. 2L-2

The last ring sits exactly at theta = pi, so its 2L-1 grid points share one
sphere location; the grid stores them uncollapsed (the transforms work on
the full L x (2L-1) array) while the distinct-location count identifies
them. Ring indices extend to t = 0 .. 2L-2 over the doubled colatitude
range [0, 2pi), which is the indexing the transforms' periodic extension
uses.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, InvalidBandLimitError


@dataclass(frozen=True)
class MwGrid:
    """Sample positions for one band-limit: L thetas by 2L-1 phis."""

    band_limit: int
    thetas: np.ndarray
    phis: np.ndarray

    def __post_init__(self):
        self.thetas.flags.writeable = False
        self.phis.flags.writeable = False


def check_band_limit(band_limit):
    """Reject band-limits below 1."""
    if not isinstance(band_limit, (int, np.integer)) or band_limit < 1:
        raise InvalidBandLimitError(
            f"band limit must be an integer >= 1, got {band_limit!r}"
        )


def mw_grid(band_limit):
    """Build the equiangular grid for the given band-limit."""
    check_band_limit(band_limit)
    L = int(band_limit)
    t = np.arange(L)
    p = np.arange(2 * L - 1)
    thetas = np.pi * (2 * t + 1) / (2 * L - 1)
    phis = 2.0 * np.pi * p / (2 * L - 1)
    return MwGrid(L, thetas, phis)


def extended_theta(t, grid):
    """Colatitude of ring t on the doubled range t = 0 .. 2L-2.

    The map t -> 2L-2-t reflects through theta = pi: the returned values
    satisfy extended_theta(t) + extended_theta(2L-2-t) = 2 pi.
    """
    L = grid.band_limit
    if not 0 <= t <= 2 * L - 2:
        raise ContractViolationError(
            f"ring index must lie in 0..{2 * L - 2}, got {t}"
        )
    return math.pi * (2 * t + 1) / (2 * L - 1)


def sample_counts(band_limit):
    """Distinct sample counts for the three samplings at one band-limit.

    Returns a dict with keys 'n_mw' (this grid, south-pole ring counted
    once), 'n_gl' (Gauss-Legendre), and 'n_dh' (Driscoll & Healy).
    """
    check_band_limit(band_limit)
    L = int(band_limit)
    return {
        "n_mw": (L - 1) * (2 * L - 1) + 1,
        "n_gl": L * (2 * L - 1),
        "n_dh": 2 * L * (2 * L - 1),
    }


def to_csv(grid):
    """Sample positions as CSV text: header `theta,phi`, ring-major order."""
    lines = ["theta,phi"]
    for theta in grid.thetas:
        for phi in grid.phis:
            lines.append(f"{theta:.17g},{phi:.17g}")
    return "\n".join(lines) + "\n"
