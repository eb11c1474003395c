"""Column tables behind each figure-style output.

Every builder returns plain ``dict[str, np.ndarray]`` tables (insertion order
is column order) so the CLI only has to serialize them.
"""
from __future__ import annotations

import numpy as np

from . import defects, dynamics
from .eigenmodes import ModelParams, modes
from .numerics import Grid
from .potentials import PotentialSpec


def eigen_table(params: ModelParams, grid: Grid) -> dict:
    m0, m1 = modes(params)
    s = grid.points
    return {
        "s": s,
        "psi0": np.asarray(m0(s)),
        "psi1": np.asarray(m1(s)),
        "V0": np.asarray(PotentialSpec(params, 0)(s)),
        "V1": np.asarray(PotentialSpec(params, 1)(s)),
    }


def defect_tables(params: ModelParams, grid: Grid, n_samples: int = 801):
    """Profiles ``(s, xi, chi)``, parametric curves ``(field, potential, kind)`` and charges."""
    kink = defects.profile_numeric(params, "kink", grid)
    lump = defects.profile_numeric(params, "lump", grid)
    profiles = {"s": kink.s, "xi": kink.values, "chi": lump.values}
    if defects.has_closed_form(params):
        curves = [defects.parametric_potential(params, k, n_samples) for k in defects.KINDS]
    else:
        curves = [defects.parametric_potential_numeric(p) for p in (kink, lump)]
    table = {
        "field": np.concatenate([c.field for c in curves]),
        "potential": np.concatenate([c.potential for c in curves]),
        "kind": np.array([c.kind for c in curves for _ in range(c.field.size)]),
    }
    return profiles, table, {"Q_kink": kink.charge, "Q_lump": lump.charge}


def time_label(t: float) -> str:
    return f"t={t:.6g}"


def evolve_table(params: ModelParams, grid: Grid, times) -> dict:
    pair = modes(params)
    s = grid.points
    table = {"s": s}
    for flavor in dynamics.FLAVORS:
        for t in times:
            st = dynamics.state(params, flavor, t, pair)
            table[f"{flavor}_{time_label(t)}"] = dynamics.density(st, s)
    return table


def wigner_tables(params: ModelParams, s_grid: Grid, p_grid: Grid, times):
    """Yield ``(flavor, index, time, table)`` long-format tables, s outer and p inner."""
    pair = modes(params)
    s = s_grid.points
    p = p_grid.points
    ss = np.repeat(s, p.size)
    pp = np.tile(p, s.size)
    for flavor in dynamics.FLAVORS:
        for k, t in enumerate(times):
            st = dynamics.state(params, flavor, t, pair)
            w = dynamics.wigner(st, s_grid, p_grid)
            yield flavor, k, t, {
                "s": ss,
                "p": pp,
                "W": w.values.ravel(),
                "W_rescaled": dynamics.wigner_modulus_rescaled(w).ravel(),
            }
