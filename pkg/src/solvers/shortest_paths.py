"""
Single-source shortest paths on length-mode graphs.
"""

import heapq
import math
from typing import Dict, Optional

from src.graph.weighted_graph import WeightedGraph


def dijkstra(
    graph: WeightedGraph,
    source: int,
    target: Optional[int] = None,
    cutoff: Optional[float] = None,
) -> Dict[int, float]:
    """Distances from ``source``; stops early at ``target`` or beyond ``cutoff``."""
    graph.check_vertex(source)
    dist: Dict[int, float] = {source: 0.0}
    done = set()
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == target:
            break
        for edge in graph.incident_edges(u):
            v = edge.other(u)
            nd = d + edge.weight
            if cutoff is not None and nd > cutoff:
                continue
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return {v: d for v, d in dist.items() if v in done}


def shortest_path_length(graph: WeightedGraph, s: int, t: int, cutoff: Optional[float] = None) -> float:
    """d(s, t); +inf when t is unreachable (or farther than ``cutoff``)."""
    graph.check_vertex(t)
    return dijkstra(graph, s, target=t, cutoff=cutoff).get(t, math.inf)
