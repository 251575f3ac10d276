"""Fréchet distance between straight-line embedded curves, trees and graphs."""

from .embedded_graph import (
    ContractedGraph,
    ContractionError,
    CurveEdge,
    EdgeCurveTable,
    EmbeddedGraph,
    GraphError,
    GraphFormatError,
    NotATreeError,
    ValidationError,
    contract_degree2,
    edge_curve_table,
    load_graph,
    save_graph,
    tree_center,
    validate,
)
from .general_graph import (
    Isomorphism,
    candidate_distances,
    graph_frechet,
    isomorphism_respecting,
    realized_cost,
)
from .geometry import (
    UNDEFINED,
    Polyline,
    curve_frechet,
    discrete_frechet,
    free_space_interval,
    frechet_critical_values,
    frechet_decision,
    point_distance,
)
from .matching import bottleneck_matching, perfect_matching_under
from .tree_frechet import (
    RootedTree,
    root_tree,
    tree_frechet_rooted,
    tree_frechet_rooted_graphs,
    tree_frechet_unrooted,
)

__all__ = [name for name in dir() if not name.startswith("_")]
