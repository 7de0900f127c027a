"""Exception types raised by torusht.

Each failure class the library reports is distinguishable by type so callers
can react programmatically instead of parsing messages.
"""


class TorushtError(Exception):
    """Base class for all torusht errors."""


class InvalidBandLimitError(TorushtError, ValueError):
    """Band-limit L is zero, negative, or inconsistent with an array shape."""


class InvalidSpinError(TorushtError, ValueError):
    """Spin s violates |s| < L, or a nonzero spin reached a spin-0-only path."""


class ContractViolationError(TorushtError, ValueError):
    """An argument breaks a documented precondition (degree mismatch, bad index)."""


class UnsupportedDegreeError(TorushtError, ValueError):
    """Requested degree exceeds a documented cap (oracle range, stability guard)."""


class SymmetryError(TorushtError, ValueError):
    """Input data violates a required symmetry beyond tolerance."""


class ConvergenceError(TorushtError, RuntimeError):
    """An iterative numerical procedure failed to converge within its cap."""
