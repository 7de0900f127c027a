"""Kernel backend selection.

Two interchangeable backends implement the hot kernels: ``_numba``
(JIT-compiled, the default) and ``_numpy`` (pure vectorized numpy, always
available). The environment variable ``TORUSHT_BACKEND`` picks the one
active at import:

* ``auto`` (default): use numba if it imports, else fall back to numpy.
* ``numba``: require numba; raise if it is unavailable.
* ``numpy``: force the pure-numpy path.

``BACKEND`` names the live backend. The public kernel functions dispatch
through the module-level selection, so ``set_backend`` can swap
implementations at runtime (used by the backend benchmark); swapping is
not thread-safe and is meant for sequential measurement code.
"""

import importlib
import os

_choice = os.environ.get("TORUSHT_BACKEND", "auto").strip().lower()

if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"TORUSHT_BACKEND must be 'auto', 'numba', or 'numpy', got {_choice!r}"
    )

if _choice == "numpy":
    from . import _numpy as _impl
    BACKEND = "numpy"
elif _choice == "numba":
    from . import _numba as _impl
    BACKEND = "numba"
else:
    try:
        from . import _numba as _impl
        BACKEND = "numba"
    except ImportError:
        from . import _numpy as _impl
        BACKEND = "numpy"


def load_backend(name):
    """Import and return the named backend module ('numba' or 'numpy')."""
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    return importlib.import_module(f"._{name}", __package__)


def set_backend(name):
    """Switch the active backend; returns the previous backend's name."""
    global _impl, BACKEND
    previous = BACKEND
    _impl = load_backend(name)
    BACKEND = name
    return previous


def risbo_step_into(a, b, ell, cc, ss):
    return _impl.risbo_step_into(a, b, ell, cc, ss)


def trapani_step(quad, ell):
    return _impl.trapani_step(quad, ell)


def fmm_core(flm2d, cl, L, spin, use_trapani):
    return _impl.fmm_core(flm2d, cl, L, spin, use_trapani)


def fmm_core_real(flm2d, cl, L, use_trapani):
    return _impl.fmm_core_real(flm2d, cl, L, use_trapani)


def flm_core(gfold, L, spin, use_trapani):
    return _impl.flm_core(gfold, L, spin, use_trapani)


def flm_core_real(gfold, L, use_trapani):
    return _impl.flm_core_real(gfold, L, use_trapani)


def gl_flm_core(a, x, ch, sh, L, spin):
    return _impl.gl_flm_core(a, x, ch, sh, L, spin)


def gl_fm_core(flm_scaled, x, ch, sh, L, spin):
    return _impl.gl_fm_core(flm_scaled, x, ch, sh, L, spin)


__all__ = [
    "BACKEND",
    "load_backend",
    "set_backend",
    "risbo_step_into",
    "trapani_step",
    "fmm_core",
    "fmm_core_real",
    "flm_core",
    "flm_core_real",
    "gl_flm_core",
    "gl_fm_core",
]
