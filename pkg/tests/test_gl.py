"""Gauss-Legendre sampling: node quality, quadrature exactness, transforms."""

import math

import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss

from torusht import (
    ContractViolationError,
    UnsupportedDegreeError,
    forward,
    gl_forward,
    gl_inverse,
    gl_nodes,
    inverse,
)
from torusht import gl as gl_mod

from helpers import max_abs, random_coeffs


@pytest.mark.parametrize("L", [1, 2, 3, 8, 32, 128])
def test_nodes_match_reference_solver(L):
    g = gl_nodes(L)
    ref_x, ref_w = leggauss(L)
    # reference returns ascending nodes, the grid stores descending
    np.testing.assert_allclose(g.nodes, ref_x[::-1], atol=1e-14)
    np.testing.assert_allclose(g.weights, ref_w[::-1], atol=1e-14)
    assert np.all(np.diff(g.nodes) < 0)
    np.testing.assert_array_equal(g.phis, 2.0 * np.pi * np.arange(2 * L - 1) / (2 * L - 1))


@pytest.mark.parametrize("L", list(range(1, 33)))
def test_quadrature_moments_are_exact(L):
    g = gl_nodes(L)
    assert abs(float(np.sum(g.weights)) - 2.0) <= 1e-13
    for k in range(2 * L):
        got = float(np.sum(g.weights * g.nodes**k))
        expected = 2.0 / (k + 1) if k % 2 == 0 else 0.0
        assert abs(got - expected) <= 1e-13, (L, k)


@pytest.mark.parametrize("L", [16, 128, 1024])
def test_residual_scale_at_the_roots(L):
    g = gl_nodes(L)
    p, dp = gl_mod._legendre_and_deriv(L, g.nodes)
    # node positions are converged: the Newton step is below one ulp
    assert float(np.max(np.abs(p / dp))) <= 1e-15
    if L <= 32:
        assert float(np.max(np.abs(p))) <= 1e-14


@pytest.mark.parametrize("spin", [0, 1, 2])
@pytest.mark.parametrize("L", [2, 4, 8, 16, 32])
def test_round_trip_recovers_coefficients(L, spin):
    if abs(spin) >= L:
        pytest.skip("spin outside band")
    coeffs = random_coeffs(L, spin, seed=L + spin)
    out = gl_forward(gl_inverse(coeffs), spin)
    assert max_abs(out.values, coeffs.values) < 1e-11


def test_shared_grid_gives_identical_results():
    L = 12
    coeffs = random_coeffs(L, 2, seed=0)
    grid = gl_nodes(L)
    a = gl_inverse(coeffs, grid=grid)
    b = gl_inverse(coeffs)
    assert max_abs(a, b) == 0.0
    ca = gl_forward(a, 2, grid=grid)
    cb = gl_forward(a, 2)
    assert max_abs(ca.values, cb.values) == 0.0


def test_cross_sampling_agreement():
    # the same coefficients synthesized and analyzed on either grid
    # come back identical
    L = 16
    for spin in (0, 2):
        coeffs = random_coeffs(L, spin, seed=spin)
        via_mw = forward(inverse(coeffs))
        via_gl = gl_forward(gl_inverse(coeffs), spin)
        assert max_abs(via_mw.values, via_gl.values) < 1e-11


def test_inverse_returns_plain_samples():
    L = 5
    out = gl_inverse(random_coeffs(L, 0, seed=3))
    assert isinstance(out, np.ndarray)
    assert out.shape == (L, 2 * L - 1)


def test_spin_argument_must_match():
    coeffs = random_coeffs(6, 1, seed=0)
    assert gl_inverse(coeffs, spin=1).shape == (6, 11)
    with pytest.raises(ContractViolationError):
        gl_inverse(coeffs, spin=0)


def test_grid_band_limit_must_match():
    coeffs = random_coeffs(6, 0, seed=0)
    with pytest.raises(ContractViolationError):
        gl_inverse(coeffs, grid=gl_nodes(5))
    with pytest.raises(ContractViolationError):
        gl_forward(np.zeros((6, 11)), 0, grid=gl_nodes(7))


def test_samples_shape_is_validated():
    with pytest.raises(ContractViolationError):
        gl_forward(np.zeros((4, 8)), 0)


def test_stability_gate():
    big = gl_mod.STABLE_BAND_LIMIT + 1
    values = np.zeros(big * big, dtype=np.complex128)
    from torusht import HarmonicCoeffs

    coeffs = HarmonicCoeffs(big, 0, values)
    with pytest.raises(UnsupportedDegreeError):
        gl_inverse(coeffs)
    with pytest.raises(UnsupportedDegreeError):
        gl_forward(np.zeros((big, 2 * big - 1)), 0)


def test_grid_arrays_are_immutable():
    g = gl_nodes(4)
    with pytest.raises(ValueError):
        g.nodes[0] = 0.0
    with pytest.raises(ValueError):
        g.weights[0] = 0.0
