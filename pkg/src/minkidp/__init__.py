"""Exact lattice-polytope toolkit for Minkowski sums and edge polytopes.

Decides the integer decomposition property, normality and interior splitting
by certified brute force, and implements constructive splitting for sums of
dilates and for sums of two edge polytopes.
"""

from .edge import (
    EdgeWeighting,
    RewriteError,
    RewriteResult,
    check_sum_parts,
    decompose_sum,
    dim_formula,
    dim_formula_sum,
    edge_polytope,
    edge_sum_polytope,
    rewrite_fractional,
    rho,
)
from .exact import hnf, rational_feasible, solve_integer_linear
from .graph import (
    Cycle,
    Graph,
    bipartition,
    common_vertex_condition,
    graph_sum,
    induced_odd_cycles,
    is_connected,
    is_subgraph,
    odd_cycle_condition,
    two_connected_components,
)
from .polytope import (
    AffineLattice,
    LatticePolytope,
    WeightedCombination,
    affine_lattice,
    contains,
    convex_combination,
    dilate,
    dimension,
    lattice_member,
    lattice_points,
    minkowski_sum,
    relint_contains,
    relint_lattice_points,
    relint_split,
    weighted_sum,
)
from .semigroup import (
    CheckReport,
    DecompositionWitness,
    caratheodory_split,
    decompose,
    idp_check,
    interior_split,
    level_check,
    normal_check,
    recheck,
    verify_interior_peeling,
    verify_peeling,
)

__version__ = "0.1.0"
