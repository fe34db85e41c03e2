"""
Exact static solvers: electrical quantities, max flow and shortest paths.
"""

from .resistance import (
    edge_resistances,
    effective_resistance,
    electrical_flow,
    resistance_distortion,
    resistance_matrix,
    solve_potentials,
)
from .maxflow import FlowNetwork, max_flow, terminal_cut_value
from .shortest_paths import dijkstra, shortest_path_length

__all__ = [
    'edge_resistances',
    'effective_resistance',
    'electrical_flow',
    'resistance_distortion',
    'resistance_matrix',
    'solve_potentials',
    'FlowNetwork',
    'max_flow',
    'terminal_cut_value',
    'dijkstra',
    'shortest_path_length',
]
