"""Hot inner loops, each with a numba kernel and a numpy twin.

The public names dispatch on ``_accel.USE_NUMBA``; the ``*_numba`` and
``*_numpy`` variants stay importable so tests and the benchmark can compare
them directly.
"""
import numpy as np

from . import _accel
from ._accel import njit, prange


# ---------------------------------------------------------------------------
# cumulative Simpson on a uniform grid
# ---------------------------------------------------------------------------

@njit(cache=True)
def cumulative_simpson_numba(y, h):
    n = y.shape[0]
    out = np.zeros(n)
    if n < 3:
        if n == 2:
            out[1] = 0.5 * h * (y[0] + y[1])
        return out
    out[1] = h / 12.0 * (5.0 * y[0] + 8.0 * y[1] - y[2])
    for i in range(2, n):
        if i % 2 == 0:
            out[i] = out[i - 2] + h / 3.0 * (y[i - 2] + 4.0 * y[i - 1] + y[i])
        else:
            out[i] = out[i - 1] + h / 12.0 * (-y[i - 2] + 8.0 * y[i - 1] + 5.0 * y[i])
    return out


def cumulative_simpson_numpy(y, h):
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    out = np.zeros(n)
    if n < 3:
        if n == 2:
            out[1] = 0.5 * h * (y[0] + y[1])
        return out
    pairs = h / 3.0 * (y[0:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    out[2::2] = np.cumsum(pairs)
    out[1] = h / 12.0 * (5.0 * y[0] + 8.0 * y[1] - y[2])
    odd = np.arange(3, n, 2)
    out[odd] = out[odd - 1] + h / 12.0 * (-y[odd - 2] + 8.0 * y[odd - 1] + 5.0 * y[odd])
    return out


# ---------------------------------------------------------------------------
# Wigner y-sums
# ---------------------------------------------------------------------------
#
# For every s-row i with lattice centre c = centers[i] and half-width
# K = kmax[i] (K < 0 means the row is identically zero) accumulate
#
#     sum_{k=-K..K} conj(lat[c+k]) * lat[c-k] * exp(2 i p_j y_k),  y_k = k dy
#
# together with the even-k subsum, which is the same trapezoid rule at twice
# the step and serves as the error estimate.  cos_tab[k, j] = cos(2 p_j k dy).

@njit(cache=True, parallel=True)
def wigner_sums_numba(lat, centers, kmax, cos_tab, sin_tab):
    ns = centers.shape[0]
    npp = cos_tab.shape[1]
    acc_re = np.zeros((ns, npp))
    acc_im = np.zeros((ns, npp))
    even_re = np.zeros((ns, npp))
    for i in prange(ns):
        K = kmax[i]
        if K < 0:
            continue
        c = centers[i]
        f0 = (np.conj(lat[c]) * lat[c]).real
        for j in range(npp):
            acc_re[i, j] = f0
            even_re[i, j] = f0
        for k in range(1, K + 1):
            fp = np.conj(lat[c + k]) * lat[c - k]
            fm = np.conj(lat[c - k]) * lat[c + k]
            a = fp.real + fm.real
            b = fp.imag - fm.imag
            ai = fp.imag + fm.imag
            bi = fp.real - fm.real
            for j in range(npp):
                cs = cos_tab[k, j]
                sn = sin_tab[k, j]
                re = a * cs - b * sn
                acc_re[i, j] += re
                acc_im[i, j] += ai * cs + bi * sn
                if k % 2 == 0:
                    even_re[i, j] += re
    return acc_re, acc_im, even_re


def wigner_sums_numpy(lat, centers, kmax, cos_tab, sin_tab):
    lat = np.asarray(lat, dtype=complex)
    kk = np.arange(cos_tab.shape[0])
    valid = kk[None, :] <= kmax[:, None]
    hi = np.where(valid, centers[:, None] + kk[None, :], 0)
    lo = np.where(valid, centers[:, None] - kk[None, :], 0)
    fp = np.where(valid, np.conj(lat[hi]) * lat[lo], 0.0)
    fm = np.where(valid, np.conj(lat[lo]) * lat[hi], 0.0)
    fm[:, 0] = 0.0
    a = fp.real + fm.real
    b = fp.imag - fm.imag
    ai = fp.imag + fm.imag
    bi = fp.real - fm.real
    acc_re = a @ cos_tab - b @ sin_tab
    acc_im = ai @ cos_tab + bi @ sin_tab
    even = (kk % 2 == 0)
    even_re = a[:, even] @ cos_tab[even] - b[:, even] @ sin_tab[even]
    empty = kmax < 0
    acc_re[empty] = 0.0
    acc_im[empty] = 0.0
    even_re[empty] = 0.0
    return acc_re, acc_im, even_re


def cumulative_simpson(y, h):
    """Running Simpson integral of uniformly sampled ``y`` (first entry 0)."""
    if _accel.USE_NUMBA:
        return cumulative_simpson_numba(np.ascontiguousarray(y, dtype=float), float(h))
    return cumulative_simpson_numpy(y, h)


def wigner_sums(lat, centers, kmax, cos_tab, sin_tab):
    if _accel.USE_NUMBA:
        return wigner_sums_numba(
            np.ascontiguousarray(lat, dtype=np.complex128),
            np.ascontiguousarray(centers, dtype=np.int64),
            np.ascontiguousarray(kmax, dtype=np.int64),
            np.ascontiguousarray(cos_tab),
            np.ascontiguousarray(sin_tab),
        )
    return wigner_sums_numpy(lat, centers, kmax, cos_tab, sin_tab)
