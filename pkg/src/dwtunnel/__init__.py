"""Double-well tunneling modes built from deformed topological defects."""
from .defects import DefectProfile, ParametricCurve, field_of_phi, parametric_potential, profile_numeric
from .dynamics import SuperpositionState, UnderResolvedError, WignerGrid, density, norm_squared, state, wigner
from .eigenmodes import Mode, ModelParams, count_nodes, default_grid, modes, overlap, schrodinger_residual
from .numerics import Grid, QuadratureError, erf, integrate
from .potentials import PotentialSpec, v_closed_form, v_generic, v_reconstructed

__version__ = "0.1.0"

__all__ = [
    "DefectProfile", "Grid", "Mode", "ModelParams", "ParametricCurve", "PotentialSpec", "QuadratureError",
    "SuperpositionState", "UnderResolvedError", "WignerGrid", "count_nodes", "default_grid", "density",
    "erf", "field_of_phi", "integrate", "modes", "norm_squared", "overlap", "parametric_potential",
    "profile_numeric", "schrodinger_residual", "state", "v_closed_form", "v_generic", "v_reconstructed", "wigner",
]
