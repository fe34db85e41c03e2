"""
Distance sparsifiers: non-terminal clique elimination and the greedy spanner.
"""

import itertools
import logging
import math
from typing import Dict, Iterable, Optional, Sequence

from src.errors import GraphError, InvariantViolation
from src.graph.weighted_graph import GraphMode, WeightedGraph
from src.solvers.shortest_paths import dijkstra, shortest_path_length
from src.sparsify.schur import min_degree_order

logger = logging.getLogger(__name__)

Adjacency = Dict[int, Dict[int, float]]


def _require_length(graph: WeightedGraph) -> None:
    if graph.mode is not GraphMode.LENGTH:
        raise GraphError(f"Distance sparsifiers need a length-mode graph, got {graph.mode.value}")


def _eliminate_min(adjacency: Adjacency, v: int) -> None:
    star = adjacency.pop(v, {})
    for a in star:
        del adjacency[a][v]
    neighbors = sorted(star)
    for i, a in enumerate(neighbors):
        for b in neighbors[i + 1:]:
            candidate = star[a] + star[b]
            if candidate < adjacency[a].get(b, math.inf):
                adjacency[a][b] = candidate
                adjacency[b][a] = candidate


def _graph_from_adjacency(num_vertices: int, adjacency: Adjacency) -> WeightedGraph:
    graph = WeightedGraph(num_vertices, GraphMode.LENGTH)
    for a in sorted(adjacency):
        for b in sorted(adjacency[a]):
            if a < b:
                graph.add_edge(a, b, adjacency[a][b])
    return graph


def eliminate_nonterminal_dist(graph: WeightedGraph, v: int) -> WeightedGraph:
    """Replace v by a clique on its neighbors keeping only the lightest parallel edge."""
    graph.check_vertex(v)
    _require_length(graph)
    adjacency = graph.merged_adjacency()
    _eliminate_min(adjacency, v)
    return _graph_from_adjacency(graph.num_vertices, adjacency)


def distance_closure(
    graph: WeightedGraph,
    terminals: Iterable[int],
    order: Optional[Sequence[int]] = None,
) -> WeightedGraph:
    """
    Eliminate all non-terminals; terminal distances are preserved exactly.

    Disconnected terminal pairs end up without an edge. The result is the
    elimination graph, not the full metric completion: an edge (a, b) may be
    longer than d(a, b) when a shorter path runs through other terminals.

    Args:
        graph: Length-mode graph
        terminals: Non-empty terminal set
        order: Explicit elimination order (default min-degree)

    Returns:
        Length-mode graph whose edges join terminals only
    """
    _require_length(graph)
    terminal_set = {int(k) for k in terminals}
    if not terminal_set:
        raise GraphError("Distance closure needs a non-empty terminal set")
    for k in terminal_set:
        graph.check_vertex(k)

    adjacency = graph.merged_adjacency()
    for component in graph.components(sorted(adjacency)):
        if not terminal_set.intersection(component):
            for a in component:
                del adjacency[a]
    eliminate = [v for v in adjacency if v not in terminal_set]
    if order is None:
        order = min_degree_order(adjacency, eliminate)
    else:
        order = [int(v) for v in order if int(v) in adjacency]
        if sorted(order) != sorted(eliminate):
            raise GraphError("Elimination order must list every non-terminal of the terminal components once")

    for v in order:
        _eliminate_min(adjacency, v)
    return _graph_from_adjacency(graph.num_vertices, adjacency)


def greedy_spanner(graph: WeightedGraph, q: int) -> WeightedGraph:
    """
    Deterministic greedy (2q-1)-spanner.

    Edges are scanned by (weight, edge id); an edge is kept iff the spanner
    built so far does not already connect its endpoints within (2q-1) times
    its weight.
    """
    _require_length(graph)
    if int(q) != q or q < 1:
        raise GraphError(f"Spanner parameter q must be a positive integer, got {q}")
    stretch = 2 * int(q) - 1

    spanner = WeightedGraph(graph.num_vertices, GraphMode.LENGTH)
    for edge in sorted(graph.edges(), key=lambda e: (e.weight, e.edge_id)):
        limit = stretch * edge.weight
        if shortest_path_length(spanner, edge.u, edge.v, cutoff=limit) > limit:
            spanner.add_edge(edge.u, edge.v, edge.weight, edge_id=edge.edge_id)
    logger.debug("Greedy %d-spanner kept %d of %d edges", stretch, spanner.num_edges, graph.num_edges)
    return spanner


def distance_sparsify(graph: WeightedGraph, terminals: Iterable[int], q: int, audit: bool = False) -> WeightedGraph:
    """
    greedy_spanner(distance_closure(graph, K), q).

    Args:
        graph: Length-mode graph
        terminals: Terminal set K
        q: Spanner parameter; terminal distances stretch by at most 2q-1
        audit: Check d_G <= d_H <= (2q-1) d_G on every terminal pair

    Returns:
        Length-mode graph on the terminals

    Raises:
        InvariantViolation: If the audit finds a pair outside the bounds
    """
    terminals = sorted({int(k) for k in terminals})
    sparsifier = greedy_spanner(distance_closure(graph, terminals), q)
    if audit:
        audit_distance_sparsifier(graph, sparsifier, terminals, q)
    return sparsifier


def audit_distance_sparsifier(graph: WeightedGraph, sparsifier: WeightedGraph, terminals: Sequence[int], q: int) -> float:
    """Worst observed d_H / d_G over terminal pairs; raises when outside [1, 2q-1]."""
    stretch = 2 * q - 1
    worst = 1.0
    for s in terminals:
        original = dijkstra(graph, s)
        compressed = dijkstra(sparsifier, s)
        for t in terminals:
            if t <= s:
                continue
            d_g, d_h = original.get(t, math.inf), compressed.get(t, math.inf)
            if math.isinf(d_g) and math.isinf(d_h):
                continue
            slack = 1e-9 * max(1.0, d_g)
            if d_h < d_g - slack or d_h > stretch * d_g + slack:
                raise InvariantViolation(
                    f"Terminal pair ({s}, {t}): sparsifier distance {d_h} outside [{d_g}, {stretch * d_g}]"
                )
            worst = max(worst, d_h / d_g if d_g > 0 else 1.0)
    return worst
