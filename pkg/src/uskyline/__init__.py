"""Dynamic skyline queries on uncertain graphs."""

from .distances import (
    BoundedPathSet,
    DistanceMatrix,
    Expected,
    ExpectedDistanceConfig,
    Majority,
    MajorityDistanceConfig,
    ShortestDistanceDistribution,
    build_distance_matrix,
    distance_distribution,
    enumerate_paths,
    exact_majority_distance,
    expected_distance,
    majority_distance,
    shortest_distance,
    shortest_distances_from,
)
from .errors import (
    ConfigurationError,
    EdgeListParseError,
    EnumerationLimitError,
    GraphValidationError,
    SelectionInfeasibleError,
    StrategyError,
    UnknownVertexError,
    UskylineError,
)
from .graph import (
    GraphStats,
    UncertainGraph,
    load_edge_list,
    stats,
    synthesize_attributes,
    two_hop_neighbors,
    write_edge_list,
)
from .harness import ExperimentPlan, RunRecord, parse_plan, run_plan, run_query
from .pruning import CandidateSet, PruneConfig, QuerySet, bfs_prune, distance_prune, prune
from .sampling import (
    SampleSet,
    WorldSample,
    draw_samples,
    enumerate_worlds,
    reliability,
    world_probability,
)
from .skyline import SkylineResult, bnl_skyline, dominates, naive_skyline
from .strategies import StrategyConfig, clustering_coefficient, select_queries

__version__ = "0.1.0"
