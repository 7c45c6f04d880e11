"""Simulator for constant-round LOCAL-model decomposition and coloring algorithms."""

from .engine import (
    Action,
    LocalBudgetExceeded,
    LocalityViolation,
    RoundLimitExceeded,
    RunTrace,
    Topology,
    VertexContext,
    VertexProgram,
    collect_topology,
    derive_vertex_rng,
    run,
)
from .graph import (
    Cluster,
    Graph,
    NetworkDecomposition,
    cluster_diameter,
    distance,
    extract_clusters,
    generate_clique_path,
    generate_gnp,
    generate_random_regular,
    induced_subgraph,
    r_hop_neighborhood,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "Cluster",
    "Graph",
    "LocalBudgetExceeded",
    "LocalityViolation",
    "NetworkDecomposition",
    "RoundLimitExceeded",
    "RunTrace",
    "Topology",
    "VertexContext",
    "VertexProgram",
    "cluster_diameter",
    "collect_topology",
    "derive_vertex_rng",
    "distance",
    "extract_clusters",
    "generate_clique_path",
    "generate_gnp",
    "generate_random_regular",
    "induced_subgraph",
    "r_hop_neighborhood",
    "run",
]
