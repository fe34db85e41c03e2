"""
From-scratch ground truth on the full current graph.

Oracles read edge weights as whatever the calling mode needs (conductances,
capacities or lengths) and never look at any sparsifier.
"""

from typing import Dict, FrozenSet, Iterable

from src.graph.weighted_graph import WeightedGraph
from src.solvers.maxflow import max_flow
from src.solvers.resistance import effective_resistance
from src.solvers.shortest_paths import shortest_path_length
from src.sparsify.cut import cut_profile


def oracle_energy(graph: WeightedGraph, s: int, t: int) -> float:
    """Energy of the unit s-t electrical flow; +inf when disconnected."""
    return effective_resistance(graph, s, t)


def oracle_maxflow(graph: WeightedGraph, s: int, t: int) -> float:
    """Exact s-t max-flow value with weights as capacities."""
    return max_flow(graph, s, t)


def oracle_distance(graph: WeightedGraph, s: int, t: int) -> float:
    """Dijkstra distance with weights as lengths; +inf when disconnected."""
    return shortest_path_length(graph, s, t)


def oracle_cut_profile(graph: WeightedGraph, terminals: Iterable[int]) -> Dict[FrozenSet[int], float]:
    """
    Minimum terminal cut for every bipartition of the terminals.

    Args:
        graph: Capacity graph
        terminals: Terminal set K with at least two vertices

    Returns:
        Map from S (containing the smallest terminal, S != K) to mincut(S, K - S)
    """
    return cut_profile(graph, terminals)
