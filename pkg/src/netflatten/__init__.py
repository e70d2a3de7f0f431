"""Scale-free network growth, influence metrics and infection-curve flattening."""

from .centrality import CentralityScores, Measure, compute, rank_top, ranking
from .clustering import ClusteringReport, clustering_report, gcc1, gcc2, local_clustering
from .curve import (
    DistanceDistribution,
    GammaParams,
    averaged_curve,
    curve_peak,
    distance_distribution,
    fit_gamma,
    gamma_pdf,
)
from .estimators import CentralityRanker, GammaCurveFit, TargetedIsolation, check_graph
from .experiment import ExperimentConfig, ExperimentReport, run_experiment, write_report
from .generators import GrowthSpec, generate, generate_ba, generate_hk
from .graph import (
    UNREACHABLE,
    Graph,
    GraphError,
    bfs_distances,
    connected_components,
    diameter,
    from_edge_list,
    is_connected,
    isolate_node,
    read_edge_list,
)
from .isolation import FlatteningReport, IsolationPlan, ThresholdUnreachable, scenario1, scenario2

__version__ = "0.1.0"

__all__ = [
    "CentralityScores",
    "Measure",
    "compute",
    "rank_top",
    "ranking",
    "ClusteringReport",
    "clustering_report",
    "gcc1",
    "gcc2",
    "local_clustering",
    "DistanceDistribution",
    "GammaParams",
    "averaged_curve",
    "curve_peak",
    "distance_distribution",
    "fit_gamma",
    "gamma_pdf",
    "CentralityRanker",
    "GammaCurveFit",
    "TargetedIsolation",
    "check_graph",
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiment",
    "write_report",
    "GrowthSpec",
    "generate",
    "generate_ba",
    "generate_hk",
    "UNREACHABLE",
    "Graph",
    "GraphError",
    "bfs_distances",
    "connected_components",
    "diameter",
    "from_edge_list",
    "is_connected",
    "isolate_node",
    "read_edge_list",
    "FlatteningReport",
    "IsolationPlan",
    "ThresholdUnreachable",
    "scenario1",
    "scenario2",
]
