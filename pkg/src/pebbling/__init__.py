"""Graph pebbling: exact solvers, certificates, and rational LP bounds."""

from .configurations import (
    Configuration,
    apply_move,
    canonical_form,
    configuration,
    empty_configuration,
    enumerate_configurations,
    uniform_configuration,
)
from .graphs import (
    Graph,
    build_graph,
    cycle_graph,
    diameter,
    distance,
    distances_from,
    eccentricity,
    generate,
    hypercube,
    induced_subgraph,
    lollipop,
    named_graph,
    path_graph,
    rooted_cube,
)
from .lp import LinearProgram, LpSolution, linear_program, lp_pebbling_bound, solve_lp
from .pebbling_number import (
    PiResult,
    is_class0,
    max_unsolvable_weight,
    pi_global,
    pi_rooted,
)
from .solver import SearchLimits, SolveOutcome, Solver, is_solvable, potential
from .strategies import (
    Certificate,
    Rational,
    ValidityResult,
    WeightFunction,
    certify_by_decomposition,
    certify_by_oracle,
    certify_tree,
    check_tree_strategy,
    conic_combine,
    construction,
    construction_certificate,
    cube_copy_embeddings,
    cycle_strategy_pair,
    diameter_lower_bound,
    evaluate,
    extend_certificate,
    q4_copy_embeddings,
    verify_decomposition,
    verify_validity_oracle,
    weight_function,
    weight_function_bound,
)

__all__ = [
    "Certificate",
    "Configuration",
    "Graph",
    "LinearProgram",
    "LpSolution",
    "PiResult",
    "Rational",
    "SearchLimits",
    "SolveOutcome",
    "Solver",
    "ValidityResult",
    "WeightFunction",
    "apply_move",
    "build_graph",
    "canonical_form",
    "certify_by_decomposition",
    "certify_by_oracle",
    "certify_tree",
    "check_tree_strategy",
    "configuration",
    "conic_combine",
    "construction",
    "construction_certificate",
    "cube_copy_embeddings",
    "cycle_graph",
    "cycle_strategy_pair",
    "diameter",
    "diameter_lower_bound",
    "distance",
    "distances_from",
    "eccentricity",
    "empty_configuration",
    "enumerate_configurations",
    "evaluate",
    "extend_certificate",
    "generate",
    "hypercube",
    "induced_subgraph",
    "is_class0",
    "is_solvable",
    "linear_program",
    "lollipop",
    "lp_pebbling_bound",
    "max_unsolvable_weight",
    "named_graph",
    "path_graph",
    "pi_global",
    "pi_rooted",
    "potential",
    "q4_copy_embeddings",
    "rooted_cube",
    "solve_lp",
    "uniform_configuration",
    "verify_decomposition",
    "verify_validity_oracle",
    "weight_function",
    "weight_function_bound",
]
