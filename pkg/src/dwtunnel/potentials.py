"""Quantum-mechanical double-well potentials V0 (primitive) and V1 (deformed).

V1 is the potential in which psi1 is the zero mode; psi0 then sits at
``-omega1^2`` in it (the tachyonic mode), so ``V0 - V1 = 1/sigma^2``.

The symmetric closed form used here is re-derived from ``psi0''/psi0``::

    V_w(s) = [32 g^4 q^4 + (-1)^w 16 g^2 q^2 - 1 - 32 g^2 q^2 cosh(2 g s) + cosh(4 g s)]
             / (32 g^2 q^4)

with ``g = gamma`` and ``q = sigma``.
The commonly quoted printed version lacks the ``-1`` and sits higher by
``1/(32 gamma^2 sigma^4)``; it is kept behind ``printed=True`` for comparison.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigenmodes import (
    Mode,
    ModelParams,
    alpha_derivatives,
    log_derivative_beta,
    log_derivative_beta_prime,
    multiplier_alpha,
)

NODE_THRESHOLD = 1e-12


class NodeDomainError(ValueError):
    """Reconstruction requested where the mode (numerically) vanishes."""

    def __init__(self, s):
        self.s = s
        super().__init__(f"mode vanishes (|psi| <= {NODE_THRESHOLD:g}) at s = {s!r}; V = psi''/psi is undefined")


def _check_which(which):
    if which not in (0, 1):
        raise ValueError(f"which must be 0 (V0) or 1 (V1), got {which!r}")


def v_closed_form(params: ModelParams, which: int, s, printed: bool = False):
    """Symmetric-case closed form of V0 (``which=0``) or V1 (``which=1``)."""
    _check_which(which)
    if params.eps_asym != 0:
        raise ValueError("closed-form potentials exist only for eps_asym = 0; use reconstructed_potential")
    g, sig = params.gamma, params.sigma
    x = g * np.asarray(s, dtype=float)
    gs2 = g * g * sig * sig
    with np.errstate(over="ignore"):
        shape = (np.cosh(4.0 * x) - 1.0 - 32.0 * gs2 * np.cosh(2.0 * x)) / (32.0 * g * g * sig ** 4)
    if printed:
        shape = shape + 1.0 / (32.0 * g * g * sig ** 4)
    # g^2 + shape is shared by both branches so V0 - V1 is the exact shift 1/sigma^2 up to one rounding
    base = g * g + shape
    half_shift = 0.5 / sig ** 2
    out = base + half_shift if which == 0 else base - half_shift
    return float(out) if np.ndim(out) == 0 else out


def printed_offset(params: ModelParams, s: float = 0.0) -> float:
    """Printed minus re-derived closed form at ``s`` (a constant)."""
    sym = ModelParams(params.gamma, params.sigma, 0.0)
    return v_closed_form(sym, 0, s, printed=True) - v_closed_form(sym, 0, s)


def reconstructed_potential(params: ModelParams, which: int, s):
    """``psi0''/psi0 - which/sigma^2`` evaluated analytically.

    Valid for any asymmetry, including eps_asym != 0 where no closed form
    exists; ``psi0`` has no nodes so nothing is divided.
    """
    _check_which(which)
    beta = log_derivative_beta(params, s)
    with np.errstate(over="ignore", invalid="ignore"):
        v0 = log_derivative_beta_prime(params, s) + beta * beta
    return v0 - which / params.sigma ** 2


def v_reconstructed(mode: Mode, eigenvalue: float, s):
    """``psi''(s)/psi(s) + eigenvalue`` from the analytic derivatives of ``mode``.

    Raises :class:`NodeDomainError` where ``|mode(s)| <= 1e-12``.
    """
    s_arr = np.asarray(s, dtype=float)
    psi = np.asarray(mode(s_arr))
    bad = np.abs(psi) <= NODE_THRESHOLD
    if np.any(bad):
        first = s_arr[bad] if s_arr.ndim else s_arr
        raise NodeDomainError(float(np.atleast_1d(first)[0]))
    params = mode.params
    beta = log_derivative_beta(params, s_arr)
    ratio = log_derivative_beta_prime(params, s_arr) + beta * beta
    if mode.index == 1:
        alpha = multiplier_alpha(params, s_arr)
        d1, d2 = alpha_derivatives(params, s_arr)
        ratio = ratio + (d2 + 2.0 * d1 * beta) / alpha
    out = ratio + eigenvalue
    return float(out) if np.ndim(out) == 0 else out


def v_generic(gamma: float, eps_phen: float, s):
    """One-parameter family interpolating V0 (eps_phen > 0) and V1 (eps_phen < 0).

    ``eps_phen = 1/sigma`` reproduces V0, ``-1/sigma`` reproduces V1 and
    ``eps_phen = 0`` gives the flat profile ``gamma^2``.
    """
    if gamma <= 0:
        raise ValueError("gamma must be > 0")
    e = float(eps_phen)
    x = gamma * np.asarray(s, dtype=float)
    g2 = gamma * gamma
    with np.errstate(over="ignore", invalid="ignore"):
        dev = (16.0 * g2 * (e * abs(e) - 2.0 * e * e * np.cosh(2.0 * x))
               + e ** 4 * (np.cosh(4.0 * x) - 1.0)) / (32.0 * g2)
    if e == 0.0:
        dev = np.zeros_like(x)
    out = g2 + dev
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class PotentialSpec:
    """V0 or V1 of a model; closed form when symmetric, reconstructed otherwise."""

    params: ModelParams
    which: int

    def __post_init__(self):
        _check_which(self.which)

    def __call__(self, s):
        if self.params.eps_asym == 0:
            return v_closed_form(self.params, self.which, s)
        return reconstructed_potential(self.params, self.which, s)


def local_minima(values) -> np.ndarray:
    """Indices of strict interior local minima of a sampled curve."""
    v = np.asarray(values, dtype=float)
    idx = np.nonzero((v[1:-1] < v[:-2]) & (v[1:-1] < v[2:]))[0] + 1
    return idx


def minima_positions(params: ModelParams) -> tuple[float, float] | None:
    """Analytic minima ``+-arccosh(8 gamma^2 sigma^2)/(2 gamma)`` of symmetric V0."""
    arg = 8.0 * params.gamma ** 2 * params.sigma ** 2
    if arg <= 1.0:
        return None
    s0 = float(np.arccosh(arg) / (2.0 * params.gamma))
    return -s0, s0
