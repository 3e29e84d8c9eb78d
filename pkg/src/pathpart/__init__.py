"""Path partitions of finite simple graphs.

Exact minimum path-partition oracle, a local-search engine whose rewrite
moves mirror the minimality arguments behind the (Delta-delta)n/(Delta+delta)
bound, and exact-rational verification of that bound and its supporting
inequalities.
"""

from .graph import (
    DegreeProfile,
    Graph,
    GraphError,
    ParseError,
    degree_profile,
    external_edge_count,
    load_graph,
    parse_dimacs,
    parse_edge_list,
    parse_graph,
    serialize_edge_list,
)
from .partition import (
    PathPartition,
    PartitionError,
    PartitionStats,
    Potential,
    ValidationReport,
    greedy_initial,
    parse_partition,
    partition_from_edges,
    potential,
    serialize_partition,
    stats,
    validate_partition,
)
from .layering import (
    AlphaSequence,
    Layering,
    LayeringError,
    alpha_sequence,
    build_layering,
    classify_good_order,
    derive_rewired,
    split_orders,
)
from .moves import (
    ClaimReport,
    MoveError,
    Rewrite,
    SearchTrace,
    apply_move,
    assert_fixpoint_claims,
    enumerate_moves,
    local_search,
)
from .exact import ExactLimitError, ExactResult, exact_mu, has_hamiltonian_path
from .bounds import (
    BoundReport,
    CountingReport,
    EpsilonSandwich,
    check_bound,
    conjecture_bound,
    counting_chain,
    cubic_bound,
    epsilon_sandwich,
    theorem_bound,
)
from .generators import (
    CorpusSpec,
    GenerationError,
    bipartite_copies,
    build,
    clique_copies,
    figure1_fixture,
    random_bounded,
    random_cubic,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
