"""Pure-numpy kernel implementations.

Vectorized fallback twins of the numba kernels in ``_numba``; selected when
the ``TORUSHT_BACKEND`` environment variable is ``numpy`` or when numba is
unavailable. Both modules expose identical signatures and must agree to
floating-point round-off; the test suite pins their equivalence.

Layout conventions shared by both backends:

* Wigner planes are dense squares of side 2*ell+1 with index offset ell, so
  entry (m', m) lives at [ell+m', ell+m].
* ``quad`` buffers hold the quadrant m' >= 0, m >= 0 of the beta = pi/2 plane
  at [m', m]; the remaining quadrants follow from the sign rules
  D(m',-m) = (-1)^(ell+m') D(m',m) and D(-m',m) = (-1)^(ell-m) D(m',m).
* Harmonic coefficient matrices ``flm2d`` are (L, 2L-1) with column offset
  L-1; Fourier-plane row/column offsets are likewise L-1.
"""

import math

import numpy as np

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _risbo_half(src, dst, two_j, cc, ss):
    """Advance a Wigner plane by half a degree, j-1/2 -> j with 2j = two_j.

    ``src`` has side two_j, ``dst`` side two_j+1. ``cc``/``ss`` are
    cos(beta/2)/sin(beta/2). Entries gather the four spin-1/2 couplings of
    the source plane.
    """
    n1 = two_j + 1
    idx = np.arange(n1, dtype=np.float64)
    r = np.sqrt(idx)
    u = np.sqrt(two_j - idx)
    ap = np.zeros((n1 + 1, n1 + 1), dtype=np.float64)
    ap[1:two_j + 1, 1:two_j + 1] = src
    dst[:, :] = (
        cc * np.outer(r, r) * ap[0:n1, 0:n1]
        - ss * np.outer(r, u) * ap[0:n1, 1:n1 + 1]
        + ss * np.outer(u, r) * ap[1:n1 + 1, 0:n1]
        + cc * np.outer(u, u) * ap[1:n1 + 1, 1:n1 + 1]
    ) / two_j


def risbo_step_into(a, b, ell, cc, ss):
    """Advance the plane held in a[:2*ell-1, :2*ell-1] to degree ell in place.

    ``b`` is scratch for the intermediate half-integer plane; both buffers
    must have side at least 2*ell+1. After the call a[:2*ell+1, :2*ell+1]
    holds degree ell.
    """
    if ell == 0:
        a[0, 0] = 1.0
        return
    _risbo_half(a[:2 * ell - 1, :2 * ell - 1], b[:2 * ell, :2 * ell], 2 * ell - 1, cc, ss)
    _risbo_half(b[:2 * ell, :2 * ell], a[:2 * ell + 1, :2 * ell + 1], 2 * ell, cc, ss)


def trapani_step(quad, ell):
    """Advance the pi/2 quadrant held in quad[:ell, :ell] to degree ell in place.

    Seeds the new top row m' = ell from the previous top row, then fills the
    rows below by the downward three-term recurrence in m'. Only the
    quadrant m', m in [0, ell] is produced.
    """
    if ell == 0:
        quad[0, 0] = 1.0
        return
    marr = np.arange(1, ell + 1, dtype=np.float64)
    quad[ell, 1:ell + 1] = np.sqrt(
        ell * (2.0 * ell - 1.0) / (2.0 * (ell + marr) * (ell + marr - 1.0))
    ) * quad[ell - 1, 0:ell]
    quad[ell, 0] = -math.sqrt((2.0 * ell - 1.0) / (2.0 * ell)) * quad[ell - 1, 0]
    m2 = 2.0 * np.arange(ell + 1, dtype=np.float64)
    for mu in range(ell - 1, -1, -1):
        t = m2 * quad[mu + 1, :ell + 1]
        if mu + 2 <= ell:
            t -= math.sqrt((ell - mu - 1.0) * (ell + mu + 2.0)) * quad[mu + 2, :ell + 1]
        quad[mu, :ell + 1] = t / math.sqrt((ell + mu + 1.0) * (ell - mu))


def _quadrant(el, use_trapani, quad, a, b):
    """Advance whichever pi/2 recursion is selected and return its quadrant."""
    if use_trapani:
        trapani_step(quad, el)
        return quad[:el + 1, :el + 1]
    risbo_step_into(a, b, el, INV_SQRT2, INV_SQRT2)
    return a[el:2 * el + 1, el:2 * el + 1]


def _alloc_state(L, use_trapani):
    if use_trapani:
        return np.zeros((L, L), dtype=np.float64), None, None
    side = 2 * L - 1
    return None, np.zeros((side, side), dtype=np.float64), np.zeros((side, side), dtype=np.float64)


def fmm_core(flm2d, cl, L, spin, use_trapani):
    """Raw Delta contraction of the inverse transform.

    Returns T of shape (L, 2L-1) with
    T[m', L-1+m] = sum_ell cl[ell] * D_{m'm} * D_{m',-spin} * flm2d[ell, L-1+m]
    for m' in [0, L-1]; phases are applied by the caller.
    """
    T = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    cs = abs(spin)
    quad, a, b = _alloc_state(L, use_trapani)
    for el in range(L):
        Q = _quadrant(el, use_trapani, quad, a, b)
        if el < cs:
            continue
        alt = np.where(np.arange(el + 1) % 2 == el % 2, 1.0, -1.0)
        ds = Q[:, cs] * alt if spin > 0 else Q[:, cs].copy()
        wcol = cl[el] * ds
        fpos = flm2d[el, L - 1:L + el]
        T[:el + 1, L - 1:L + el] += (wcol[:, None] * Q) * fpos[None, :]
        if el > 0:
            fneg = flm2d[el, L - 1 - el:L - 1][::-1]
            blk = ((wcol * alt)[:, None] * Q[:, 1:el + 1]) * fneg[None, :]
            T[:el + 1, L - 1 - el:L - 1] += blk[:, ::-1]
    return T


def fmm_core_real(flm2d, cl, L, use_trapani):
    """Spin-0, m >= 0 half of fmm_core; flm2d is (L, L) with columns m >= 0."""
    T = np.zeros((L, L), dtype=np.complex128)
    quad, a, b = _alloc_state(L, use_trapani)
    for el in range(L):
        Q = _quadrant(el, use_trapani, quad, a, b)
        wcol = cl[el] * Q[:, 0]
        T[:el + 1, :el + 1] += (wcol[:, None] * Q) * flm2d[el, :el + 1][None, :]
    return T


def flm_core(gfold, L, spin, use_trapani):
    """Raw Delta contraction of the forward transform.

    ``gfold`` is (2L-1, L): rows m with offset L-1, columns m' >= 0 holding
    the m'-folded Fourier plane. Returns R of shape (L, 2L-1) with
    R[ell, L-1+m] = sum_{m'=0}^{ell} D_{m'm} * D_{m',-spin} * gfold[L-1+m, m'];
    per-degree normalization and phases are applied by the caller.
    """
    R = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    cs = abs(spin)
    quad, a, b = _alloc_state(L, use_trapani)
    for el in range(L):
        Q = _quadrant(el, use_trapani, quad, a, b)
        if el < cs:
            continue
        alt = np.where(np.arange(el + 1) % 2 == el % 2, 1.0, -1.0)
        ds = Q[:, cs] * alt if spin > 0 else Q[:, cs]
        A = ds[:, None] * Q
        R[el, L - 1:L + el] = (gfold[L - 1:L + el, :el + 1] * A.T).sum(axis=1)
        if el > 0:
            B = (ds * alt)[:, None] * Q[:, 1:el + 1]
            R[el, L - 1 - el:L - 1] = (gfold[L - 1 - el:L - 1, :el + 1] * B.T[::-1, :]).sum(axis=1)
    return R


def flm_core_real(gfold, L, use_trapani):
    """Spin-0, m >= 0 half of flm_core; gfold is (L, L) with rows m >= 0."""
    R = np.zeros((L, L), dtype=np.complex128)
    quad, a, b = _alloc_state(L, use_trapani)
    for el in range(L):
        Q = _quadrant(el, use_trapani, quad, a, b)
        A = Q[:, 0][:, None] * Q
        R[el, :el + 1] = (gfold[:el + 1, :el + 1] * A.T).sum(axis=1)
    return R


def _seed_d(m, n):
    """Seed of the three-term degree recursion for d^ell_{mn}.

    Maps (m, n) into the region n >= |m| so the closed form at ell0 =
    max(|m|, |n|) uses nonnegative half-angle exponents. Returns
    (const, e_c, e_s, ell0) such that d^{ell0}_{mn}(beta) =
    const * cos(beta/2)**e_c * sin(beta/2)**e_s.
    """
    if n >= abs(m):
        mm, nn = m, n
        sign = 1.0
    elif n <= -abs(m):
        mm, nn = -m, -n
        sign = -1.0 if (m - n) % 2 else 1.0
    elif m >= abs(n):
        mm, nn = n, m
        sign = -1.0 if (m - n) % 2 else 1.0
    else:
        mm, nn = -n, -m
        sign = 1.0
    const = sign * math.exp(0.5 * (
        math.lgamma(2 * nn + 1) - math.lgamma(nn + mm + 1) - math.lgamma(nn - mm + 1)
    ))
    return const, nn + mm, nn - mm, nn


def _step_coeffs(el, m, n):
    """Multipliers (c1, c2, c3) with d^{el+1} = (c1*x - c2)*d^el - c3*d^{el-1}."""
    den = el * math.sqrt(((el + 1.0) ** 2 - m * m) * ((el + 1.0) ** 2 - n * n))
    c1 = (2.0 * el + 1.0) * el * (el + 1.0) / den
    c2 = (2.0 * el + 1.0) * float(m * n) / den
    c3 = (el + 1.0) * math.sqrt((el * el - m * m) * (el * el - n * n)) / den
    return c1, c2, c3


def gl_flm_core(a, x, ch, sh, L, spin):
    """Colatitude sums of the node-quadrature forward transform.

    ``a[mi, i]`` holds lambda_i * G_m(theta_i) for m = mi-(L-1); x, ch, sh are
    cos(theta_i), cos(theta_i/2), sin(theta_i/2). Returns R of shape
    (L, 2L-1) with R[ell, mi] = sum_i d^ell_{m,-spin}(theta_i) * a[mi, i].
    """
    R = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    n = -spin
    for mi in range(2 * L - 1):
        m = mi - (L - 1)
        const, ec, es, l0 = _seed_d(m, n)
        if l0 >= L:
            continue
        dl = const * ch ** ec * sh ** es
        dlm1 = np.zeros_like(dl)
        arow = a[mi]
        for el in range(l0, L):
            R[el, mi] = np.sum(dl * arow)
            if el == L - 1:
                break
            if el == 0:
                dl, dlm1 = x * dl, dl
            else:
                c1, c2, c3 = _step_coeffs(el, m, n)
                dl, dlm1 = (c1 * x - c2) * dl - c3 * dlm1, dl
    return R


def gl_fm_core(flm_scaled, x, ch, sh, L, spin):
    """Colatitude sums of the node-quadrature inverse transform.

    Returns F of shape (2L-1, L) with
    F[mi, i] = sum_ell flm_scaled[ell, mi] * d^ell_{m,-spin}(theta_i).
    """
    F = np.zeros((2 * L - 1, L), dtype=np.complex128)
    n = -spin
    for mi in range(2 * L - 1):
        m = mi - (L - 1)
        const, ec, es, l0 = _seed_d(m, n)
        if l0 >= L:
            continue
        dl = const * ch ** ec * sh ** es
        dlm1 = np.zeros_like(dl)
        for el in range(l0, L):
            F[mi] += flm_scaled[el, mi] * dl
            if el == L - 1:
                break
            if el == 0:
                dl, dlm1 = x * dl, dl
            else:
                c1, c2, c3 = _step_coeffs(el, m, n)
                dl, dlm1 = (c1 * x - c2) * dl - c3 * dlm1, dl
    return F
