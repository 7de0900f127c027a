"""Exact spin spherical harmonic transforms on equiangular grids.

A band-limited spin signal sampled on L rings of 2L-1 equiangular points
is extended to a torus, where FFTs and a closed-form weighted convolution
make the forward and inverse transforms exact to rounding. The package
also provides the matching Wigner-plane recursions, an exact spherical
quadrature from half the samples, a Gauss-Legendre variant, brute-force
reference transforms, binary round-trip files, and a benchmark CLI.

Hot kernels are JIT-compiled when numba is available; set
``TORUSHT_BACKEND=numpy`` to force the pure-numpy fallback.
"""

from .errors import (
    ContractViolationError,
    ConvergenceError,
    InvalidBandLimitError,
    InvalidSpinError,
    SymmetryError,
    TorushtError,
    UnsupportedDegreeError,
)
from .gl import STABLE_BAND_LIMIT, GlGrid, gl_forward, gl_inverse, gl_nodes
from .grid import MwGrid, check_band_limit, extended_theta, mw_grid, sample_counts
from .io import load_coeffs, load_signal, save_coeffs, save_signal
from .kernels import BACKEND
from .mw import (
    FourierPlane,
    HarmonicCoeffs,
    MwSignal,
    assemble_flm,
    compute_Fmm,
    delta_planes,
    forward,
    forward_real,
    inverse,
    inverse_real,
    periodic_extend,
    phi_fft,
    synthesize_reduced,
    theta_fft,
    weighted_convolution,
)
from .oracle import NAIVE_BAND_LIMIT, naive_basis_value, naive_forward, naive_inverse
from .quadrature import (
    QuadWeights,
    distinct_point_count,
    harmonic_integral,
    integrate,
    quad_weights,
    quad_weights_q,
    ring_weights_v,
    weight_w,
)
from .wigner import (
    JACOBI_DEGREE_LIMIT,
    WignerPlane,
    plane,
    plane_jacobi,
    plane_risbo,
    plane_trapani,
    row_three_term,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ContractViolationError",
    "ConvergenceError",
    "FourierPlane",
    "GlGrid",
    "HarmonicCoeffs",
    "InvalidBandLimitError",
    "InvalidSpinError",
    "JACOBI_DEGREE_LIMIT",
    "MwGrid",
    "MwSignal",
    "NAIVE_BAND_LIMIT",
    "QuadWeights",
    "STABLE_BAND_LIMIT",
    "SymmetryError",
    "TorushtError",
    "UnsupportedDegreeError",
    "WignerPlane",
    "assemble_flm",
    "check_band_limit",
    "compute_Fmm",
    "delta_planes",
    "distinct_point_count",
    "extended_theta",
    "forward",
    "forward_real",
    "gl_forward",
    "gl_inverse",
    "gl_nodes",
    "harmonic_integral",
    "integrate",
    "inverse",
    "inverse_real",
    "load_coeffs",
    "load_signal",
    "mw_grid",
    "naive_basis_value",
    "naive_forward",
    "naive_inverse",
    "periodic_extend",
    "phi_fft",
    "plane",
    "plane_jacobi",
    "plane_risbo",
    "plane_trapani",
    "quad_weights",
    "quad_weights_q",
    "ring_weights_v",
    "row_three_term",
    "sample_counts",
    "save_coeffs",
    "save_signal",
    "synthesize_reduced",
    "theta_fft",
    "weight_w",
    "weighted_convolution",
    "__version__",
]
