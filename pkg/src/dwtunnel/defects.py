"""Deformed defects behind the double-well modes.

The primitive defect is the phi^4 kink ``phi(s) = tanh(s)`` with
``y_phi = 1 - phi^2``.  Deforming it with ``alpha(phi) = chi_xi`` gives a kink
``xi(s)`` whose derivative is the ground state and a lump ``chi(s)`` whose
derivative is the first excited state:

    xi'  = z_xi(phi(s))  = psi0(s),     chi' = w_chi(phi(s)) = alpha psi0 = psi1(s).

Closed forms in ``phi`` exist for ``gamma in {1, 2}`` with ``eps = 0``; the
numeric route (cumulative integration of the unnormalized modes) covers every
model.  All fields use the unnormalized modes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigenmodes import ModelParams, cutoff, default_grid, psi_unnormalized
from .kernels import cumulative_simpson
from .numerics import Grid, erf, integrate

KINDS = ("kink", "lump")
_SQRT_PI = math.sqrt(math.pi)


def _check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"kind must be 'kink' or 'lump', got {kind!r}")


def _require_closed_form(params: ModelParams):
    if params.eps_asym != 0:
        raise ValueError("closed-form defects exist only for eps_asym = 0")
    if params.gamma not in (1, 2):
        raise ValueError(f"closed-form defects exist only for gamma in {{1, 2}}, got {params.gamma}")


def _check_phi(phi):
    phi = np.asarray(phi, dtype=float)
    if np.any(np.abs(phi) >= 1.0):
        raise ValueError("phi must lie strictly inside (-1, 1)")
    return phi


def has_closed_form(params: ModelParams) -> bool:
    return params.eps_asym == 0 and params.gamma in (1, 2)


def phi_kink(s):
    """Primitive kink, + branch."""
    return np.tanh(s)


def y_phi(phi):
    return 1.0 - np.asarray(phi, dtype=float) ** 2


def deformation_alpha(params: ModelParams, phi):
    """``alpha`` written in the primitive field: ``phi`` (gamma=1), ``2 phi/(1+phi^2)`` (gamma=2)."""
    _require_closed_form(params)
    phi = _check_phi(phi)
    if params.gamma == 1:
        return phi
    return 2.0 * phi / (1.0 + phi * phi)


def superpotential_derivs(params: ModelParams, phi, printed: bool = False):
    """``(z_xi, w_chi)`` at primitive field value ``phi``.

    The default forms are exact: ``z_xi(tanh s) = psi0(s)``, so the first-order
    equations ``xi' = z_xi`` and ``chi' = w_chi`` hold along the kink.  With
    ``printed=True`` the widely reproduced variants are returned instead
    (exponent ``-(3 - 2 phi^2)/(8 sigma^2 (1 - phi^2))`` for gamma=1 and the
    constant ``-1/(16 sigma^2)`` for gamma=2); they do not satisfy
    ``xi' = z_xi`` and are kept for comparison only.
    """
    _require_closed_form(params)
    phi = _check_phi(phi)
    sig2 = params.sigma ** 2
    one_m = 1.0 - phi * phi
    one_p = 1.0 + phi * phi
    with np.errstate(under="ignore"):
        if params.gamma == 1:
            num = (3.0 - 2.0 * phi * phi) if printed else one_p
            z = np.exp(-num / (8.0 * sig2 * one_m)) / np.sqrt(one_m)
        elif printed:
            z = one_p / one_m * np.exp(-(1.0 + 2.0 * phi ** 2 + phi ** 4) / (16.0 * sig2 * one_p ** 2))
        else:
            z = one_p / one_m * np.exp(-(1.0 + 6.0 * phi ** 2 + phi ** 4) / (32.0 * sig2 * one_m ** 2))
    w = deformation_alpha(params, phi) * z
    if np.ndim(z) == 0:
        return float(z), float(w)
    return z, w


def _field_scale(params: ModelParams):
    # (amplitude of xi, amplitude of chi) in front of the erf
    k = 8.0 if params.gamma == 1 else 32.0
    sig = params.sigma
    return (_SQRT_PI * sig * math.exp(-1.0 / (k * sig * sig)),
            _SQRT_PI * sig * math.exp(1.0 / (k * sig * sig)))


def field_of_phi(params: ModelParams, kind: str, phi):
    """Erf closed forms of ``xi(phi)`` (kink) and ``chi(phi)`` (lump)."""
    _check_kind(kind)
    _require_closed_form(params)
    phi = _check_phi(phi)
    sig = params.sigma
    a_xi, a_chi = _field_scale(params)
    one_m = 1.0 - phi * phi
    if params.gamma == 1:
        if kind == "kink":
            return a_xi * erf(phi / (2.0 * sig * np.sqrt(one_m)))
        return a_chi * erf(1.0 / (2.0 * sig * np.sqrt(one_m)))
    if kind == "kink":
        return a_xi * erf(phi / (2.0 * sig * one_m))
    return a_chi * erf((1.0 + phi * phi) / (4.0 * sig * one_m))


def closed_form_asymptotes(params: ModelParams, kind: str) -> tuple[float, float]:
    """``(field(-inf), field(+inf))`` of the closed forms."""
    _check_kind(kind)
    _require_closed_form(params)
    a_xi, a_chi = _field_scale(params)
    if kind == "kink":
        return -a_xi, a_xi
    return a_chi, a_chi


@dataclass(frozen=True)
class DefectProfile:
    """A sampled field profile with its asymptotes and topological charge."""

    params: ModelParams
    kind: str
    s: np.ndarray
    values: np.ndarray

    @property
    def asymptote_minus(self) -> float:
        return float(self.values[0])

    @property
    def asymptote_plus(self) -> float:
        return float(self.values[-1])

    @property
    def charge(self) -> float:
        return self.asymptote_plus - self.asymptote_minus

    def __call__(self, s):
        return np.interp(s, self.s, self.values)


def profile_numeric(params: ModelParams, kind: str, grid: Grid | None = None) -> DefectProfile:
    """Integrate ``xi' = psi0`` or ``chi' = psi1`` across ``grid``.

    The additive constant is fixed at ``s = 0``: ``xi(0) = 0`` and ``chi(0)``
    equal to the closed-form value when one exists, otherwise 0.
    """
    _check_kind(kind)
    if grid is None:
        grid = default_grid(params)
    index = 0 if kind == "kink" else 1
    s = grid.points
    f = psi_unnormalized(params, index, s)
    peak = np.max(np.abs(f))
    edge = max(abs(f[0]), abs(f[-1]))
    if edge > 1e-14 * peak:
        raise ValueError(
            f"grid [{grid.s_min}, {grid.s_max}] too narrow: integrand at the ends is "
            f"{edge / peak:.2e} of its peak (need <= 1e-14)"
        )
    running = cumulative_simpson(f, grid.spacing)
    h = grid.spacing
    i0 = int(round(-grid.s_min / h))
    if 0 <= i0 < s.size and abs(s[i0]) < 1e-9 * h:
        at_zero = running[i0]
    else:
        at_zero = integrate(lambda x: psi_unnormalized(params, index, x), grid.s_min, 0.0, tol=1e-13 * max(peak, 1.0))
    offset = 0.0
    if kind == "lump" and has_closed_form(params):
        offset = float(field_of_phi(params, "lump", 0.0))
    return DefectProfile(params, kind, s, running - at_zero + offset)


@dataclass(frozen=True)
class ParametricCurve:
    """Points ``(field, potential)`` of U(xi) or W(chi), parameterized by ``phi``."""

    kind: str
    field: np.ndarray
    potential: np.ndarray
    parameter: np.ndarray


def _bisect(pred, lo, hi, iters=200):
    # smallest x in [lo, hi] with pred(x) true, pred monotone false -> true
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-12:
            break
    return hi


def trim_delta(params: ModelParams, kind: str) -> float:
    """Endpoint trim so the curve ends where it has converged.

    kink: ``U < 1e-12`` of its peak; lump: field within ``1e-10`` of its asymptote.
    Both targets carry a factor-2 margin because ``phi = 1 - delta`` is rounded.
    """
    _check_kind(kind)
    _require_closed_form(params)
    # far enough out for both criteria, close enough that tanh(s_hi) < 1
    s_hi = min(cutoff(params, 1e-300) + 1.0, 17.0)
    if kind == "kink":
        s_grid = np.linspace(0.0, s_hi, 4001)
        peak = float(np.max(psi_unnormalized(params, 0, s_grid))) ** 2
        start = float(s_grid[np.argmax(psi_unnormalized(params, 0, s_grid))])
        s_end = _bisect(lambda x: psi_unnormalized(params, 0, x) ** 2 < 0.5e-12 * peak, start, s_hi)
    else:
        _, asym = closed_form_asymptotes(params, "lump")
        s_end = _bisect(lambda x: abs(asym - field_of_phi(params, "lump", np.tanh(x))) < 0.5e-10, 0.0, s_hi)
    return float(1.0 - np.tanh(s_end))


def parametric_potential(params: ModelParams, kind: str, n_samples: int = 801,
                         printed: bool = False) -> ParametricCurve:
    """U(xi) = z_xi^2/2 or W(chi) = w_chi^2/2 sampled uniformly in ``phi``."""
    _check_kind(kind)
    _require_closed_form(params)
    if n_samples < 3:
        raise ValueError("n_samples must be >= 3")
    delta = trim_delta(params, kind)
    # scaled symmetric nodes keep phi = 0 exact for odd n_samples
    phi = (1.0 - delta) * np.linspace(-1.0, 1.0, int(n_samples))
    z, w = superpotential_derivs(params, phi, printed=printed)
    deriv = z if kind == "kink" else w
    return ParametricCurve(kind, field_of_phi(params, kind, phi), 0.5 * deriv ** 2, phi)


def parametric_potential_numeric(profile: DefectProfile) -> ParametricCurve:
    """Same curve from a numeric profile, valid for any model."""
    index = 0 if profile.kind == "kink" else 1
    deriv = psi_unnormalized(profile.params, index, profile.s)
    return ParametricCurve(profile.kind, profile.values.copy(), 0.5 * deriv ** 2, np.tanh(profile.s))
