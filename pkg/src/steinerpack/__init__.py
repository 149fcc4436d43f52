"""Steiner tree packing numbers, k-tree connectivity, and line graphs."""

from .graph import (
    ComponentClass,
    Graph,
    LineGraphMap,
    RootedTree,
    Subgraph,
    build_graph,
    classify_component,
    connected_components,
    cycle_edge_set,
    edge_induced_subgraph,
    is_steiner_tree,
    line_graph,
    root_tree,
    spanning_tree,
)
from .oracle import (
    ConnectivityResult,
    Limits,
    Mode,
    PackingWitness,
    edge_connectivity_flow,
    enumerate_minimal_steiner_trees,
    max_disjoint_packing,
    prune_to_terminal_leaves,
    tree_connectivity,
)
from .transform import (
    Case,
    CasePartition,
    partition_terminal_edges,
    packing_root,
    terminal_vertex_set,
    theorem_check,
    transform,
    verify_internally_disjoint,
)

__version__ = "0.1.0"
