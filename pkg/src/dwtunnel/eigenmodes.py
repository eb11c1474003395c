"""Closed-form ground and first excited states of the double-well family.

With the multiplier ``alpha(s) = eps + tanh(gamma s)`` the two lowest states
are

    psi0(s) = cosh(gamma s) E(s),
    psi1(s) = alpha(s) psi0(s) = (eps cosh(gamma s) + sinh(gamma s)) E(s),
    E(s)    = exp(-[cosh(2 gamma s) + eps (2 gamma s + sinh(2 gamma s))] / (8 gamma^2 sigma^2)),

with eigenvalues ``omega0^2 = 0`` and ``omega1^2 = 1/sigma^2``.  For an
asymmetric well the first excited state keeps the ``eps cosh`` term; dropping
it (``sinh(gamma s) E`` alone) is an eigenstate only when ``eps = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import Grid, integrate, second_derivative

# large-|gamma s| branch switches to log space before cosh overflows
_LOG_BRANCH = 300.0


@dataclass(frozen=True)
class ModelParams:
    """One member of the double-well family: ``(gamma, sigma, eps_asym)``."""

    gamma: float
    sigma: float
    eps_asym: float = 0.0

    def __post_init__(self):
        for name in ("gamma", "sigma", "eps_asym"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite real number, got {value!r}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if not abs(self.eps_asym) < 1:
            raise ValueError(f"|eps_asym| must be < 1 for normalizable modes, got {self.eps_asym}")

    @property
    def omega1(self) -> float:
        return 1.0 / self.sigma

    @property
    def kappa1(self) -> float:
        return 1.0 / self.sigma

    @property
    def symmetric(self) -> bool:
        return self.eps_asym == 0


def cutoff(params: ModelParams, level: float = 1e-18) -> float:
    """Half-width beyond which the squared-mode envelope is below ``level``.

    Solves ``(1 - |eps|) cosh(2 gamma s) = 4 gamma^2 sigma^2 ln(1/level)``;
    the ``1 - |eps|`` factor accounts for the slower-decaying side of an
    asymmetric well.
    """
    g, sig, eps = params.gamma, params.sigma, params.eps_asym
    rhs = 4.0 * g * g * sig * sig * (-math.log(level)) / (1.0 - abs(eps))
    return math.acosh(max(rhs, 1.0)) / (2.0 * g)


def default_grid(params: ModelParams, n_points: int = 2001, level: float = 1e-32) -> Grid:
    """Symmetric grid covering both modes down to ``sqrt(level)`` of their peaks."""
    half = cutoff(params, level)
    s = np.linspace(-half, half, 4001)
    peak2 = min(float(np.max(psi_unnormalized(params, k, s) ** 2)) for k in (0, 1))
    if peak2 < 1.0:
        # cutoff() measures against an O(1) scale; shallow modes need the wider cut
        half = cutoff(params, level * peak2)
    return Grid.symmetric(math.ceil(half * 10.0) / 10.0, n_points)


def _exponent(params: ModelParams, s):
    g, sig, eps = params.gamma, params.sigma, params.eps_asym
    x = 2.0 * g * s
    with np.errstate(over="ignore"):
        # cosh + eps sinh with both coefficients positive: overflows to +inf, never nan
        q = 0.5 * ((1.0 + eps) * np.exp(x) + (1.0 - eps) * np.exp(-x))
    return -(q + eps * x) / (8.0 * g * g * sig * sig)


def psi_unnormalized(params: ModelParams, index: int, s):
    """``cosh(gamma s) E(s)`` for index 0, ``alpha(s) cosh(gamma s) E(s)`` for index 1."""
    if index not in (0, 1):
        raise ValueError(f"only modes 0 and 1 exist in closed form, got {index}")
    s_arr = np.asarray(s, dtype=float)
    x = params.gamma * s_arr
    expo = _exponent(params, s_arr)
    ax = np.abs(x)
    near = ax <= _LOG_BRANCH
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        xs = np.where(near, x, 0.0)
        eps = params.eps_asym
        pre = np.cosh(xs) if index == 0 else eps * np.cosh(xs) + np.sinh(xs)
        direct = pre * np.exp(expo)
        # eps cosh x + sinh x -> sign(x) (1 + eps sign(x)) e^|x| / 2
        amp = 1.0 if index == 0 else np.sign(x) * (1.0 + eps * np.sign(x))
        far = amp * np.exp(ax - math.log(2.0) + expo)
    out = np.where(near, direct, far)
    return float(out) if out.ndim == 0 else out


def multiplier_alpha(params: ModelParams, s):
    return params.eps_asym + np.tanh(params.gamma * np.asarray(s, dtype=float))


def alpha_derivatives(params: ModelParams, s):
    """``(alpha', alpha'')`` of the multiplier."""
    g = params.gamma
    t = np.tanh(g * np.asarray(s, dtype=float))
    sech2 = 1.0 - t * t
    return g * sech2, -2.0 * g * g * sech2 * t


def log_derivative_beta(params: ModelParams, s):
    """``beta = (ln psi0)'`` from the closed form."""
    g, sig = params.gamma, params.sigma
    x = g * np.asarray(s, dtype=float)
    t = np.tanh(x)
    with np.errstate(over="ignore"):
        c2 = np.cosh(x) ** 2
    return g * t - (params.eps_asym + t) * c2 / (2.0 * g * sig * sig)


def log_derivative_beta_prime(params: ModelParams, s):
    g, sig = params.gamma, params.sigma
    x = g * np.asarray(s, dtype=float)
    t = np.tanh(x)
    with np.errstate(over="ignore", invalid="ignore"):
        sc = np.sinh(x) * np.cosh(x)
    return g * g * (1.0 - t * t) - (1.0 + 2.0 * (params.eps_asym + t) * sc) / (2.0 * sig * sig)


def eigenvalue(params: ModelParams, index: int) -> float:
    """omega^2 of mode ``index`` in the primitive well."""
    return 0.0 if index == 0 else 1.0 / params.sigma ** 2


@dataclass(frozen=True)
class Mode:
    """A normalized closed-form eigenfunction; call it to evaluate."""

    params: ModelParams
    index: int
    eigenvalue: float
    norm_constant: float

    def __call__(self, s):
        return self.norm_constant * psi_unnormalized(self.params, self.index, s)

    def unnormalized(self, s):
        return psi_unnormalized(self.params, self.index, s)


def _quad_tol(f, a, b, rel):
    # absolute tolerance scaled by a coarse magnitude estimate of the integral
    xs = np.linspace(a, b, 401)
    scale = float(np.sum(np.abs(f(xs)))) * (b - a) / 400
    return max(rel * scale, 1e-300)


def normalize(params: ModelParams, index: int, rel_tol: float = 1e-13) -> Mode:
    """Build the unit-norm :class:`Mode` of the given index."""
    s_cut = cutoff(params)

    def sq(s):
        return psi_unnormalized(params, index, s) ** 2

    norm2 = integrate(sq, -s_cut, s_cut, tol=_quad_tol(sq, -s_cut, s_cut, rel_tol))
    return Mode(params, index, eigenvalue(params, index), 1.0 / math.sqrt(norm2))


def modes(params: ModelParams) -> tuple[Mode, Mode]:
    return normalize(params, 0), normalize(params, 1)


def overlap(a: Mode, b: Mode, tol: float = 1e-13) -> float:
    """``<a|b>`` over the truncated real line."""
    s_cut = max(cutoff(a.params), cutoff(b.params))
    return integrate(lambda s: a(s) * b(s), -s_cut, s_cut, tol=tol)


def count_nodes(mode: Mode, grid: Grid, threshold: float = 1e-14) -> int:
    """Sign changes of ``mode`` sampled on ``grid``, ignoring |values| < threshold."""
    values = np.asarray(mode(grid.points))
    kept = values[np.abs(values) >= threshold]
    if kept.size < 2:
        return 0
    return int(np.count_nonzero(np.signbit(kept[1:]) != np.signbit(kept[:-1])))


def schrodinger_residual(mode: Mode, potential, eigenvalue: float, grid: Grid,
                         h: float = 1e-3) -> float:
    """``max |-psi'' + V psi - omega^2 psi| / max |psi|`` over interior grid points."""
    s = grid.points[1:-1]
    psi = np.asarray(mode(s))
    d2 = second_derivative(mode, s, h)
    v = np.asarray(potential(s), dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        vpsi = np.where(psi == 0.0, 0.0, v * psi)
    resid = np.abs(-d2 + vpsi - eigenvalue * psi)
    return float(np.max(resid) / np.max(np.abs(psi)))
