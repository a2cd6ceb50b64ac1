"""Random-graph laboratory for Ramsey-type thresholds.

Core pieces: G(N,p) sampling and fair edge halvings (graphs), pattern
containment with witnesses (witness), arrow relation queries (arrows),
closed-form thresholds and exact small-case oracles (analytic), and a
reproducible Monte Carlo harness (harness).  A CLI and an HTTP service
wrap the same functions.
"""

__version__ = "0.1.0"

from .analytic import (
    ClampedProbability,
    ThresholdParams,
    chernoff_tail_bound,
    default_omega,
    exact_binomial_tail,
    exact_containment_prob,
    exact_halving_distribution,
    kst_extremal_bound,
    m_min,
    p_lower,
    p_upper,
    ramsey_window_N,
)
from .arrows import (
    ArrowReport,
    arrow_certificate_kmn,
    arrow_exhaustive,
    decide_arrow,
    refute_arrow_by_halving,
)
from .graphs import (
    ColoredSplit,
    Graph,
    book_graph,
    build_graph,
    common_neighborhood,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph_probability,
    pair_density,
    path_graph,
    random_halving,
    read_edge_list,
    sample_gnp,
    write_edge_list,
)
from .harness import (
    DensityCheckReport,
    EventEstimate,
    EventSpec,
    HalvingTestReport,
    SweepConfig,
    SweepResult,
    SweepRow,
    density_property_check,
    estimate_event_prob,
    parse_sweep_config,
    random_disjoint_pairs,
    run_sweep,
    verify_halving_statistical,
    wilson_interval,
)
from .rng import RngStream
from .witness import PatternSpec, Witness, brute_force_contains, contains_book, contains_kmn

__all__ = [
    "__version__",
    "ArrowReport",
    "ClampedProbability",
    "ColoredSplit",
    "DensityCheckReport",
    "EventEstimate",
    "EventSpec",
    "Graph",
    "HalvingTestReport",
    "PatternSpec",
    "RngStream",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "ThresholdParams",
    "Witness",
    "arrow_certificate_kmn",
    "arrow_exhaustive",
    "book_graph",
    "brute_force_contains",
    "build_graph",
    "chernoff_tail_bound",
    "common_neighborhood",
    "complete_bipartite_graph",
    "complete_graph",
    "contains_book",
    "contains_kmn",
    "cycle_graph",
    "decide_arrow",
    "default_omega",
    "density_property_check",
    "empty_graph",
    "estimate_event_prob",
    "exact_binomial_tail",
    "exact_containment_prob",
    "exact_halving_distribution",
    "graph_probability",
    "kst_extremal_bound",
    "m_min",
    "p_lower",
    "p_upper",
    "pair_density",
    "parse_sweep_config",
    "path_graph",
    "ramsey_window_N",
    "random_disjoint_pairs",
    "random_halving",
    "read_edge_list",
    "refute_arrow_by_halving",
    "run_sweep",
    "sample_gnp",
    "verify_halving_statistical",
    "wilson_interval",
    "write_edge_list",
]
