"""
Graph core: dynamic weighted multigraph, Laplacian views and vertex/edge vectors.
"""

from .weighted_graph import (
    ChangeRecord,
    DeleteEdge,
    Edge,
    EdgeAction,
    GraphMode,
    InsertEdge,
    WeightedGraph,
    connected,
    graph_union,
    induced_subgraph,
    mutate_edge,
)
from .laplacian import LaplacianView, quadratic_form
from .vectors import Demand, Flow, Potential, flow_from_potentials, unit_demand

__all__ = [
    'ChangeRecord',
    'DeleteEdge',
    'Edge',
    'EdgeAction',
    'GraphMode',
    'InsertEdge',
    'WeightedGraph',
    'connected',
    'graph_union',
    'induced_subgraph',
    'mutate_edge',
    'LaplacianView',
    'quadratic_form',
    'Demand',
    'Flow',
    'Potential',
    'flow_from_potentials',
    'unit_demand',
]
