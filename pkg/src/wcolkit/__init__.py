"""Weak coloring numbers, congested shallow minors, and FO transductions.

The package is organized around small exact computations: reachability
sets under a vertex ordering, budgeted exact search for the weak
coloring number, validated congested shallow-minor models with an
ordering transfer inequality, a constructive route from reachability
intersections to such models, a first-order formula engine with
transduction search, and graph family generators with growth profiles.
"""

from .families import (
    DOMINATION_MARGIN,
    GeneratedGraph,
    WcolProfile,
    clique_graph,
    compare_domination,
    complete_ktree,
    cycle_graph,
    edgeless_graph,
    fan_ktree,
    format_profile,
    gen_family,
    grid_graph,
    path_graph,
    profile_family,
    random_ktree,
    star_graph,
)
from .fo import (
    Adj,
    And,
    AsymmetricFormulaError,
    Color,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Literal,
    Not,
    Or,
    ParseError,
    SearchResult,
    Transduction,
    apply_interpretation,
    check_symmetric,
    eval_formula,
    format_formula,
    formula_colors,
    parse_formula,
    quantifier_rank,
    search_transduction,
    swap_xy,
    symmetrize,
    transduce,
)
from .graphs import (
    INFINITE,
    Graph,
    GraphFormatError,
    InvariantViolation,
    VertexOrdering,
    add_universal,
    bfs_distances,
    blowup,
    d_separated,
    format_graph,
    induced_subgraph,
    isomorphic,
    ktt_free,
    parse_graph,
    parse_ordering,
    radius,
    read_graph,
    read_ordering,
    touch,
    write_graph,
    write_ordering,
)
from .lemma import (
    BollobasVerdict,
    CoverBudgetError,
    CoverFamily,
    EdgeLabeling,
    PreconditionError,
    bollobas_bound,
    bollobas_check,
    bollobas_search,
    build_model,
    check_wreach_intersections,
    compute_covers,
    label_edges,
    matching_cover,
    minimum_vertex_cover,
    ramsey_upper,
    theoretical_cover_bound,
)
from .minors import (
    InvalidModelError,
    MalformedModelError,
    MinorModel,
    TransferReport,
    ValidationReport,
    check_transfer_inequality,
    connection_path,
    earliest_vertices,
    format_model,
    identity_model,
    parse_model,
    pull_back_order,
    random_model,
    read_model,
    validate_model,
    write_model,
)
from .wcol import (
    WcolResult,
    degeneracy_order,
    inverse_weak_reachability,
    wcol_exact,
    wcol_heuristic,
    wcol_of_order,
    weak_reachability,
    weak_reachability_paths,
    weak_reachability_sets,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
