"""Distance-profile and neighbourhood complexity of graphs, guarding families,
extremal constructions and bound verification."""

from .colnum import (
    Ball,
    BallSet,
    IntervalModel,
    Ordering,
    ball_intersection_graph,
    colnum_guarding_family,
    degeneracy_ordering,
    diameter_ordering,
    interval_graph,
    scol_of,
    sreach,
    thinness,
    wcol_of,
    wreach,
)
from .errors import BudgetError, DomainError, InputError, ParseError, PreconditionError, ProfileKitError, StructureError
from .graphcore import (
    INF,
    ComplexityResult,
    Graph,
    Profile,
    all_profiles,
    bfs_distances,
    diameter,
    is_connected,
    is_resolving,
    metric_dimension,
    nc_over_k_sets,
    neighbourhood_complexity,
    pc_over_k_sets,
    profile_complexity,
    profile_of,
)
from .treerep import (
    GuardingFamily,
    RootedTree,
    TreeRepresentation,
    chordal_case_partition,
    clique_tree,
    is_chordal,
    lca_closure,
    normalize_representation,
    separator_profile_bound_check,
    tw_guarding_family,
    validate_representation,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BallSet",
    "BudgetError",
    "ComplexityResult",
    "DomainError",
    "Graph",
    "GuardingFamily",
    "INF",
    "InputError",
    "IntervalModel",
    "Ordering",
    "ParseError",
    "PreconditionError",
    "Profile",
    "ProfileKitError",
    "RootedTree",
    "StructureError",
    "TreeRepresentation",
    "all_profiles",
    "ball_intersection_graph",
    "bfs_distances",
    "chordal_case_partition",
    "clique_tree",
    "colnum_guarding_family",
    "degeneracy_ordering",
    "diameter",
    "diameter_ordering",
    "interval_graph",
    "is_chordal",
    "is_connected",
    "is_resolving",
    "lca_closure",
    "metric_dimension",
    "nc_over_k_sets",
    "neighbourhood_complexity",
    "normalize_representation",
    "pc_over_k_sets",
    "profile_complexity",
    "profile_of",
    "scol_of",
    "separator_profile_bound_check",
    "sreach",
    "thinness",
    "tw_guarding_family",
    "validate_representation",
    "wcol_of",
    "wreach",
]
