"""Step-graphon toolkit: homomorphism densities, walk-power transforms, local
density certificates, inequality verification, and counterexample search."""

from .density import (
    grad_hom_density,
    hom_density,
    hom_density_naive,
    hom_density_subdivided,
    hom_density_weighted,
    per_entry_gradient,
)
from .errors import (
    BudgetExceededError,
    ConfigError,
    DegenerateInstanceError,
    EmptySetError,
    GraphonLabError,
    MismatchedStructureError,
    NonConvergenceError,
    NotRegularError,
    PatternNotRegularError,
    UncertifiedDensityError,
    UnknownGraphError,
)
from .graphs import (
    Graph,
    catalog,
    catalog_names,
    clique,
    complete_multipartite,
    cycle_graph,
    graph_from_json,
    graph_to_json,
    hom_count,
    in_knrs_registry,
    k55_minus_c10,
    load_graph,
    path_graph,
    save_graph,
    subdivide,
    z6_chords,
)
from .localdensity import (
    LocalDensityCertificate,
    grid_certificate,
    is_locally_dense,
    local_density_estimate,
    local_density_exact,
    local_density_grid_oracle,
    local_density_subgradient,
)
from .operators import (
    StepKernel,
    normalized_path_power,
    path_function,
    path_power,
    superlevel_set,
    u_kernel,
    zero_block_set,
)
from .search import (
    SearchConfig,
    SearchResult,
    minimize_hom_density,
    probe_even_subdivision,
    result_to_json_text,
)
from .stepgraphon import (
    OccupancyVector,
    StepFunction,
    StepGraphon,
    constant,
    degree_function,
    edge_density,
    from_graph,
    gen_pointwise_dense,
    gen_random,
    gen_regular,
    graphon_from_json,
    graphon_to_json,
    hadamard,
    is_regular,
    load_graphon,
    restrict,
    save_graphon,
)
from .verify import (
    VerificationReport,
    check_even_subdivision_sidorenko,
    check_extended_reiher,
    check_knrs,
    check_regular_subdivision_knrs,
    check_reiher,
    check_restriction_pullback,
    check_sidorenko,
    check_superlevel_restriction,
    check_transform,
    check_weakly_knrs,
    reports_to_csv,
    reports_to_json,
    run_suite,
    summarize,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ConfigError",
    "DegenerateInstanceError",
    "EmptySetError",
    "Graph",
    "GraphonLabError",
    "LocalDensityCertificate",
    "MismatchedStructureError",
    "NonConvergenceError",
    "NotRegularError",
    "OccupancyVector",
    "PatternNotRegularError",
    "SearchConfig",
    "SearchResult",
    "StepFunction",
    "StepGraphon",
    "StepKernel",
    "UncertifiedDensityError",
    "UnknownGraphError",
    "VerificationReport",
    "catalog",
    "catalog_names",
    "check_even_subdivision_sidorenko",
    "check_extended_reiher",
    "check_knrs",
    "check_regular_subdivision_knrs",
    "check_reiher",
    "check_restriction_pullback",
    "check_sidorenko",
    "check_superlevel_restriction",
    "check_transform",
    "check_weakly_knrs",
    "clique",
    "complete_multipartite",
    "constant",
    "cycle_graph",
    "degree_function",
    "edge_density",
    "from_graph",
    "gen_pointwise_dense",
    "gen_random",
    "gen_regular",
    "grad_hom_density",
    "graph_from_json",
    "graph_to_json",
    "graphon_from_json",
    "graphon_to_json",
    "grid_certificate",
    "hadamard",
    "hom_count",
    "hom_density",
    "hom_density_naive",
    "hom_density_subdivided",
    "hom_density_weighted",
    "in_knrs_registry",
    "is_locally_dense",
    "is_regular",
    "k55_minus_c10",
    "load_graph",
    "load_graphon",
    "local_density_estimate",
    "local_density_exact",
    "local_density_grid_oracle",
    "local_density_subgradient",
    "minimize_hom_density",
    "normalized_path_power",
    "path_function",
    "path_graph",
    "path_power",
    "per_entry_gradient",
    "probe_even_subdivision",
    "reports_to_csv",
    "reports_to_json",
    "restrict",
    "result_to_json_text",
    "run_suite",
    "save_graph",
    "save_graphon",
    "subdivide",
    "summarize",
    "superlevel_set",
    "u_kernel",
    "z6_chords",
    "zero_block_set",
]
