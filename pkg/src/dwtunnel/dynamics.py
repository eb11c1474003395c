"""Two-level dynamics and the Wigner phase-space transform (hbar = 1).

stable:    Psi_S(t, s) = (psi0 + exp(-i t/sigma) psi1) / sqrt(2)
unstable:  Psi_U(t, s) = (exp(-t/sigma) psi0 + psi1) / sqrt(2)

The unstable state carries the decaying tachyonic mode ``exp(-t/sigma) psi0``
and is deliberately not renormalized; its squared norm is
``(exp(-2t/sigma) + 1)/2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigenmodes import Mode, ModelParams, cutoff, modes
from .kernels import wigner_sums
from .numerics import Grid, integrate

FLAVORS = ("stable", "unstable")
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

DEFAULT_S_GRID = Grid(-8.0, 8.0, 801)
DEFAULT_P_GRID = Grid(-8.0, 8.0, 201)
DEFAULT_TIMES = (0.0, math.pi / 8, math.pi / 4, math.pi / 2, math.pi)


class UnderResolvedError(ArithmeticError):
    """The Wigner y-quadrature error estimate exceeded its tolerance."""

    def __init__(self, s: float, p: float, error: float, tol: float):
        self.s, self.p, self.error, self.tol = s, p, error, tol
        super().__init__(
            f"Wigner quadrature under-resolved at (s={s:.6g}, p={p:.6g}): "
            f"error estimate {error:.3e} > tol {tol:.3e}; refine the s grid or narrow the p range"
        )


@dataclass(frozen=True)
class SuperpositionState:
    """Equal-weight superposition of the two lowest modes at time ``time``."""

    params: ModelParams
    flavor: str
    time: float
    mode0: Mode
    mode1: Mode

    @property
    def coefficients(self) -> tuple[complex, complex]:
        w = self.params.omega1 * self.time
        if self.flavor == "stable":
            return complex(_INV_SQRT2), _INV_SQRT2 * complex(math.cos(w), -math.sin(w))
        return complex(_INV_SQRT2 * math.exp(-w)), complex(_INV_SQRT2)

    def __call__(self, s):
        c0, c1 = self.coefficients
        return c0 * np.asarray(self.mode0(s)) + c1 * np.asarray(self.mode1(s))


def state(params: ModelParams, flavor: str, t: float, mode_pair: tuple[Mode, Mode] | None = None) -> SuperpositionState:
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be 'stable' or 'unstable', got {flavor!r}")
    if not math.isfinite(t):
        raise ValueError("time must be finite")
    if flavor == "unstable" and t < 0:
        raise ValueError("the unstable superposition is defined for t >= 0 only")
    m0, m1 = mode_pair if mode_pair is not None else modes(params)
    return SuperpositionState(params, flavor, float(t), m0, m1)


def density(st: SuperpositionState, s):
    psi = st(s)
    return psi.real ** 2 + psi.imag ** 2


def norm_squared(st: SuperpositionState, tol: float = 1e-13) -> float:
    s_cut = cutoff(st.params)
    return integrate(lambda s: density(st, s), -s_cut, s_cut, tol=tol)


def tunneling_probability(st: SuperpositionState, side: int = 1, tol: float = 1e-13) -> float:
    """Probability on ``s > 0`` (side=+1) or ``s < 0`` (side=-1)."""
    s_cut = cutoff(st.params)
    a, b = (0.0, s_cut) if side > 0 else (-s_cut, 0.0)
    return integrate(lambda s: density(st, s), a, b, tol=tol)


@dataclass(frozen=True)
class WignerGrid:
    s_grid: Grid
    p_grid: Grid
    time: float
    values: np.ndarray      # shape (n_s, n_p)
    imag_residue: float     # max |Im W| / max |Re W|
    error_estimate: float   # max |W(dy) - W(2 dy)|

    def marginal_s(self) -> np.ndarray:
        """Riemann sum over p: approximates |Psi(s)|^2."""
        return self.values.sum(axis=1) * self.p_grid.spacing

    def total(self) -> float:
        return float(self.values.sum() * self.s_grid.spacing * self.p_grid.spacing)


def _support_half_width(params: ModelParams) -> float:
    # |psi|^2 below 1e-32 of its scale, so products Psi(s+y)Psi(s-y) stay below ~1e-16
    return cutoff(params, 1e-32)


def wigner(st: SuperpositionState, s_grid: Grid = DEFAULT_S_GRID, p_grid: Grid = DEFAULT_P_GRID,
           refine: int = 1, tol: float = 1e-8, imag_tol: float = 1e-10) -> WignerGrid:
    """``W(s,p) = (1/pi) int dy Psi*(s+y) Psi(s-y) exp(2 i p y)`` on a grid.

    The y-integral is a trapezoid sum with step ``ds / (2 refine)`` (``ds`` is
    the s-grid spacing), clipped to where both factors lie inside the support
    of the state.  The same sum at twice the step is the error estimate.
    """
    if refine < 1:
        raise ValueError("refine must be >= 1")
    ds = s_grid.spacing
    dy = ds / (2 * refine)
    stride = 2 * refine
    S = _support_half_width(st.params)

    # lattice u_m = u0 + m dy containing every s_i and [-S, S]
    pad_lo = max(0, math.ceil((s_grid.s_min + S) / dy) + 1)
    pad_hi = max(0, math.ceil((S - s_grid.s_max) / dy) + 1)
    n_lat = pad_lo + stride * (s_grid.n_points - 1) + 1 + pad_hi
    u = s_grid.s_min + (np.arange(n_lat) - pad_lo) * dy
    lat = np.asarray(st(u), dtype=complex)
    lat[np.abs(u) > S] = 0.0

    s = s_grid.points
    centers = pad_lo + stride * np.arange(s_grid.n_points)
    kmax = np.floor((S - np.abs(s)) / dy + 1e-9).astype(np.int64)
    kmax = np.minimum(kmax, np.minimum(centers, n_lat - 1 - centers))
    k_top = int(max(kmax.max(), 0))

    p = p_grid.points
    phase = 2.0 * np.outer(np.arange(k_top + 1) * dy, p)
    cos_tab, sin_tab = np.cos(phase), np.sin(phase)

    acc_re, acc_im, even_re = wigner_sums(lat, centers.astype(np.int64), kmax, cos_tab, sin_tab)
    scale = dy / math.pi
    w = acc_re * scale
    w_im = acc_im * scale
    w_coarse = even_re * (2.0 * scale)

    peak = float(np.max(np.abs(w)))
    if peak == 0.0:
        raise ValueError("Wigner function vanishes on the requested grid")
    residue = float(np.max(np.abs(w_im))) / peak
    if residue > imag_tol:
        raise ArithmeticError(f"Wigner imaginary residue {residue:.3e} exceeds {imag_tol:.1e}")
    err = np.abs(w - w_coarse)
    worst = np.unravel_index(int(np.argmax(err)), err.shape)
    if err[worst] > tol:
        raise UnderResolvedError(float(s[worst[0]]), float(p[worst[1]]), float(err[worst]), tol)
    return WignerGrid(s_grid, p_grid, st.time, w, residue, float(err[worst]))


def wigner_modulus_rescaled(w: WignerGrid) -> np.ndarray:
    """``|W| / max |W|`` with values in [0, 1]."""
    mag = np.abs(w.values)
    top = mag.max()
    if top == 0.0:
        raise ValueError("cannot rescale an all-zero Wigner grid")
    return mag / top
