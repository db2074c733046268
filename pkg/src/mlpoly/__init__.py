"""Exact-rational toolkit for multilinear polytope relaxations of binary
polynomial optimization over hypergraphs."""

from .hypergraph import (
    Hypergraph,
    completion,
    induced_subhypergraph,
    is_complete,
    maximal_edges,
    section_hypergraph,
)
from .acyclicity import (
    CycleCandidate,
    find_alpha_cycle,
    find_simple_cycle,
    is_alpha_acyclic,
    is_alpha_cycle,
    is_berge_acyclic,
    is_chordless_alpha_cycle,
    is_simple_cycle,
    reduce_simple_cycle,
    running_intersection_ordering,
)
from .exactlp import (
    AffineExpr,
    LinearInequality,
    LpOutcome,
    Polyhedron,
    SizeLimitExceeded,
    Var,
    is_feasible_point,
    polyhedron_equal,
    project,
    solve_lp,
)
from .hull import enumerate_facets_bruteforce
from .relaxations import (
    complete_edge_relaxation,
    enumerate_multilinear_points,
    mccormick,
    mp_vertices,
    psi,
    rlt_complete_polytope,
    standard_linearization,
)
from .transforms import (
    apply_to_inequality,
    apply_to_point,
    contract,
    expand,
    fix_node,
    switching_map,
)
from .cuts import (
    check_cg_cut,
    generalized_triangle,
    gtri_aggregation_certificate,
    normalize_triangle_cycle,
    padberg_triangle,
    support_hypergraph,
    switching_orbit,
)
from .verify import (
    almostfull_certificate,
    check_berge_tightness,
    check_decomposition,
    check_extension,
)

__version__ = "0.1.0"
