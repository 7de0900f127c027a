"""Numba kernel implementations.

Loop-level twins of the vectorized kernels in ``_numpy``; the default backend
when numba imports. Signatures, layout conventions, and results match
``_numpy`` (see its module docstring); the test suite pins the equivalence.
All kernels are serial with fixed summation order, so results are
bit-reproducible run to run.
"""

import math

import numpy as np
from numba import njit

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@njit(cache=True)
def _risbo_half(src, dst, two_j, cc, ss):
    n1 = two_j + 1
    rt = np.empty(n1, dtype=np.float64)
    for i in range(n1):
        rt[i] = math.sqrt(i)
    for i in range(n1):
        ri = rt[i]
        ui = rt[two_j - i]
        for k in range(n1):
            rk = rt[k]
            uk = rt[two_j - k]
            acc = 0.0
            if i > 0:
                if k > 0:
                    acc += ri * rk * cc * src[i - 1, k - 1]
                if k < two_j:
                    acc -= ri * uk * ss * src[i - 1, k]
            if i < two_j:
                if k > 0:
                    acc += ui * rk * ss * src[i, k - 1]
                if k < two_j:
                    acc += ui * uk * cc * src[i, k]
            dst[i, k] = acc / two_j


@njit(cache=True)
def risbo_step_into(a, b, ell, cc, ss):
    if ell == 0:
        a[0, 0] = 1.0
        return
    _risbo_half(a[:2 * ell - 1, :2 * ell - 1], b[:2 * ell, :2 * ell], 2 * ell - 1, cc, ss)
    _risbo_half(b[:2 * ell, :2 * ell], a[:2 * ell + 1, :2 * ell + 1], 2 * ell, cc, ss)


@njit(cache=True)
def trapani_step(quad, ell):
    if ell == 0:
        quad[0, 0] = 1.0
        return
    for m in range(ell, 0, -1):
        quad[ell, m] = math.sqrt(
            ell * (2.0 * ell - 1.0) / (2.0 * (ell + m) * (ell + m - 1.0))
        ) * quad[ell - 1, m - 1]
    quad[ell, 0] = -math.sqrt((2.0 * ell - 1.0) / (2.0 * ell)) * quad[ell - 1, 0]
    for mu in range(ell - 1, -1, -1):
        inv = 1.0 / math.sqrt((ell + mu + 1.0) * (ell - mu))
        if mu + 2 <= ell:
            c2 = math.sqrt((ell - mu - 1.0) * (ell + mu + 2.0))
            for m in range(ell + 1):
                quad[mu, m] = (2.0 * m * quad[mu + 1, m] - c2 * quad[mu + 2, m]) * inv
        else:
            for m in range(ell + 1):
                quad[mu, m] = 2.0 * m * quad[mu + 1, m] * inv


@njit(cache=True)
def fmm_core(flm2d, cl, L, spin, use_trapani):
    T = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    cs = abs(spin)
    quad = np.zeros((L, L), dtype=np.float64)
    a = np.zeros((2 * L - 1, 2 * L - 1), dtype=np.float64)
    b = np.zeros((2 * L - 1, 2 * L - 1), dtype=np.float64)
    for el in range(L):
        if use_trapani:
            trapani_step(quad, el)
        else:
            risbo_step_into(a, b, el, INV_SQRT2, INV_SQRT2)
            for mp in range(el + 1):
                for m in range(el + 1):
                    quad[mp, m] = a[el + mp, el + m]
        if el < cs:
            continue
        for mp in range(el + 1):
            sgn = -1.0 if (el + mp) & 1 else 1.0
            ds = quad[mp, cs]
            if spin > 0:
                ds *= sgn
            # No zero-weight skip here: for spin 0 half the quadrant rows
            # vanish, and skipping them would make the transform cost
            # depend on spin. The real-signal kernel keeps that shortcut.
            w = cl[el] * ds
            for m in range(el + 1):
                T[mp, L - 1 + m] += w * quad[mp, m] * flm2d[el, L - 1 + m]
            ws = w * sgn
            for m in range(1, el + 1):
                T[mp, L - 1 - m] += ws * quad[mp, m] * flm2d[el, L - 1 - m]
    return T


@njit(cache=True)
def fmm_core_real(flm2d, cl, L, use_trapani):
    T = np.zeros((L, L), dtype=np.complex128)
    quad = np.zeros((L, L), dtype=np.float64)
    a = np.zeros((2 * L - 1, 2 * L - 1), dtype=np.float64)
    b = np.zeros((2 * L - 1, 2 * L - 1), dtype=np.float64)
    for el in range(L):
        if use_trapani:
            trapani_step(quad, el)
        else:
            risbo_step_into(a, b, el, INV_SQRT2, INV_SQRT2)
            for mp in range(el + 1):
                for m in range(el + 1):
                    quad[mp, m] = a[el + mp, el + m]
        for mp in range(el + 1):
            w = cl[el] * quad[mp, 0]
            if w == 0.0:
                continue
            for m in range(el + 1):
                T[mp, m] += w * quad[mp, m] * flm2d[el, m]
    return T


@njit(cache=True)
def flm_core(gfold, L, spin, use_trapani):
    R = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    cs = abs(spin)
    quad = np.zeros((L, L), dtype=np.float64)
    a = np.zeros((2 * L - 1, 2 * L - 1), dtype=np.float64)
    b = np.zeros((2 * L - 1, 2 * L - 1), dtype=np.float64)
    dsrow = np.empty(L, dtype=np.float64)
    for el in range(L):
        if use_trapani:
            trapani_step(quad, el)
        else:
            risbo_step_into(a, b, el, INV_SQRT2, INV_SQRT2)
            for mp in range(el + 1):
                for m in range(el + 1):
                    quad[mp, m] = a[el + mp, el + m]
        if el < cs:
            continue
        for mp in range(el + 1):
            sgn = -1.0 if (el + mp) & 1 else 1.0
            ds = quad[mp, cs]
            if spin > 0:
                ds *= sgn
            dsrow[mp] = ds
        for m in range(el + 1):
            acc = 0.0 + 0.0j
            for mp in range(el + 1):
                acc += dsrow[mp] * quad[mp, m] * gfold[L - 1 + m, mp]
            R[el, L - 1 + m] = acc
        for m in range(1, el + 1):
            acc = 0.0 + 0.0j
            for mp in range(el + 1):
                sgn = -1.0 if (el + mp) & 1 else 1.0
                acc += dsrow[mp] * sgn * quad[mp, m] * gfold[L - 1 - m, mp]
            R[el, L - 1 - m] = acc
    return R


@njit(cache=True)
def flm_core_real(gfold, L, use_trapani):
    R = np.zeros((L, L), dtype=np.complex128)
    quad = np.zeros((L, L), dtype=np.float64)
    a = np.zeros((2 * L - 1, 2 * L - 1), dtype=np.float64)
    b = np.zeros((2 * L - 1, 2 * L - 1), dtype=np.float64)
    for el in range(L):
        if use_trapani:
            trapani_step(quad, el)
        else:
            risbo_step_into(a, b, el, INV_SQRT2, INV_SQRT2)
            for mp in range(el + 1):
                for m in range(el + 1):
                    quad[mp, m] = a[el + mp, el + m]
        for m in range(el + 1):
            acc = 0.0 + 0.0j
            for mp in range(el + 1):
                acc += quad[mp, 0] * quad[mp, m] * gfold[m, mp]
            R[el, m] = acc
    return R


@njit(cache=True)
def _seed_d(m, n):
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
        math.lgamma(2 * nn + 1.0) - math.lgamma(nn + mm + 1.0) - math.lgamma(nn - mm + 1.0)
    ))
    return const, nn + mm, nn - mm, nn


@njit(cache=True)
def gl_flm_core(a, x, ch, sh, L, spin):
    R = np.zeros((L, 2 * L - 1), dtype=np.complex128)
    n = -spin
    for mi in range(2 * L - 1):
        m = mi - (L - 1)
        const, ec, es, l0 = _seed_d(m, n)
        if l0 >= L:
            continue
        for i in range(L):
            xi = x[i]
            dl = const * ch[i] ** ec * sh[i] ** es
            dlm1 = 0.0
            av = a[mi, i]
            for el in range(l0, L):
                R[el, mi] += dl * av
                if el == L - 1:
                    break
                if el == 0:
                    dlm1 = dl
                    dl = xi * dl
                else:
                    den = el * math.sqrt(((el + 1.0) ** 2 - m * m) * ((el + 1.0) ** 2 - n * n))
                    t = ((2.0 * el + 1.0) * (el * (el + 1.0) * xi - m * n) * dl
                         - (el + 1.0) * math.sqrt((el * el - m * m) * (el * el - n * n)) * dlm1)
                    dlm1 = dl
                    dl = t / den
    return R


@njit(cache=True)
def gl_fm_core(flm_scaled, x, ch, sh, L, spin):
    F = np.zeros((2 * L - 1, L), dtype=np.complex128)
    n = -spin
    for mi in range(2 * L - 1):
        m = mi - (L - 1)
        const, ec, es, l0 = _seed_d(m, n)
        if l0 >= L:
            continue
        for i in range(L):
            xi = x[i]
            dl = const * ch[i] ** ec * sh[i] ** es
            dlm1 = 0.0
            acc = 0.0 + 0.0j
            for el in range(l0, L):
                acc += flm_scaled[el, mi] * dl
                if el == L - 1:
                    break
                if el == 0:
                    dlm1 = dl
                    dl = xi * dl
                else:
                    den = el * math.sqrt(((el + 1.0) ** 2 - m * m) * ((el + 1.0) ** 2 - n * n))
                    t = ((2.0 * el + 1.0) * (el * (el + 1.0) * xi - m * n) * dl
                         - (el + 1.0) * math.sqrt((el * el - m * m) * (el * el - n * n)) * dlm1)
                    dlm1 = dl
                    dl = t / den
            F[mi, i] = acc
    return F
