"""Exact rational convex geometry."""
from .atoms import atom_witnesses, code_of_realization, hyperplane_count, max_hyperplanes
from .convex import (
    as_hpolytope,
    feasible_point,
    h_contains,
    hull_meets,
    is_bounded,
    lp_feasible,
    point_in_vpolytope,
    vrep_to_hrep,
)
from .lp import LPResult, maximize
from .transform import close_realization, inflate, trim, trim_all, trim_realization
from .types import (
    CLOSED,
    OPEN,
    Empty,
    Halfspace,
    HPolytope,
    Realization,
    VPolytope,
    point,
    rat,
    rat_str,
)

__all__ = [
    "CLOSED", "OPEN", "Empty", "Halfspace", "HPolytope", "LPResult", "Realization",
    "VPolytope", "as_hpolytope", "atom_witnesses", "close_realization",
    "code_of_realization", "feasible_point", "h_contains", "hull_meets",
    "hyperplane_count", "inflate", "is_bounded", "lp_feasible", "max_hyperplanes",
    "maximize", "point", "point_in_vpolytope", "rat", "rat_str", "trim", "trim_all",
    "trim_realization", "vrep_to_hrep",
]
