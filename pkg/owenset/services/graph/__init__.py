from owenset.services.graph.condensation import CondensationDAG, condense_scc
from owenset.services.graph.digraph import (
    Absent,
    CapacityMap,
    DiGraph,
    Edge,
    LongestPaths,
    Orientation,
    cut_capacity,
    default_edge_names,
    longest_path_dag,
    reachable_from,
)
from owenset.services.graph.flow import (
    EdgeClass,
    EdgeClassification,
    FlowResult,
    ResidualGraph,
    classify_edges,
    max_flow,
    min_vertex_cut_side,
    residual_graph,
)

__all__ = [
    "Absent",
    "CapacityMap",
    "CondensationDAG",
    "DiGraph",
    "Edge",
    "EdgeClass",
    "EdgeClassification",
    "FlowResult",
    "LongestPaths",
    "Orientation",
    "ResidualGraph",
    "classify_edges",
    "condense_scc",
    "cut_capacity",
    "default_edge_names",
    "longest_path_dag",
    "max_flow",
    "min_vertex_cut_side",
    "reachable_from",
    "residual_graph",
]
