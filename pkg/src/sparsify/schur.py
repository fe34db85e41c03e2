"""
Schur complements by Gaussian elimination of non-terminal vertices.

Eliminating v replaces its star by a clique: neighbors a and b with
conductances w_a, w_b to v gain conductance w_a * w_b / W, where W is the
total conductance at v. Terminal effective resistances are preserved exactly.
"""

import heapq
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import config
from src.data_models import SparsifierCertificate
from src.errors import GraphError, SolverError
from src.graph.weighted_graph import GraphMode, WeightedGraph
from src.sparsify.spectral import sparsify_spectral

logger = logging.getLogger(__name__)

Adjacency = Dict[int, Dict[int, float]]


@dataclass
class SchurResult:
    """Schur complement of a graph onto a terminal set."""

    terminals: FrozenSet[int]
    graph: WeightedGraph
    order: List[int] = field(default_factory=list)


def _require_conductance(graph: WeightedGraph) -> None:
    if graph.mode is not GraphMode.CONDUCTANCE:
        raise GraphError(f"Schur complements need a conductance-mode graph, got {graph.mode.value}")


def _eliminate(adjacency: Adjacency, v: int) -> List[int]:
    """Eliminate v in place; returns the neighbors whose degree may have changed."""
    star = adjacency.pop(v, {})
    for a in star:
        del adjacency[a][v]
    total = sum(star.values())
    neighbors = sorted(star)
    for i, a in enumerate(neighbors):
        for b in neighbors[i + 1:]:
            w = star[a] * star[b] / total
            adjacency[a][b] = adjacency[a].get(b, 0.0) + w
            adjacency[b][a] = adjacency[a][b]
    return neighbors


def _graph_from_adjacency(num_vertices: int, adjacency: Adjacency) -> WeightedGraph:
    graph = WeightedGraph(num_vertices, GraphMode.CONDUCTANCE)
    for a in sorted(adjacency):
        for b in sorted(adjacency[a]):
            if a < b:
                w = adjacency[a][b]
                if not w > 0.0:
                    raise SolverError(f"Elimination produced non-positive conductance {w} on ({a}, {b})")
                graph.add_edge(a, b, w)
    return graph


def eliminate_vertex(graph: WeightedGraph, v: int) -> WeightedGraph:
    """
    Remove v and connect its neighbors by the elimination clique.

    Args:
        graph: Conductance-mode graph
        v: Vertex to eliminate

    Returns:
        New graph on the same id space with parallel edges merged
    """
    graph.check_vertex(v)
    _require_conductance(graph)
    adjacency = graph.merged_adjacency()
    _eliminate(adjacency, v)
    return _graph_from_adjacency(graph.num_vertices, adjacency)


def min_degree_order(adjacency: Adjacency, eliminate: Iterable[int]) -> List[int]:
    """Greedy minimum-degree order (ties by vertex id), simulated on a copy."""
    work = {a: dict(nbrs) for a, nbrs in adjacency.items()}
    pending = set(eliminate)
    heap = [(len(work.get(v, {})), v) for v in pending]
    heapq.heapify(heap)
    order: List[int] = []
    while heap:
        degree, v = heapq.heappop(heap)
        if v not in pending or degree != len(work.get(v, {})):
            continue
        pending.discard(v)
        order.append(v)
        for a in _eliminate(work, v):
            if a in pending:
                heapq.heappush(heap, (len(work[a]), a))
    return order


def exact_schur(
    graph: WeightedGraph,
    terminals: Iterable[int],
    order: Optional[Sequence[int]] = None,
) -> SchurResult:
    """
    Eliminate every non-terminal vertex.

    Components without a terminal are dropped. Vertices without edges are
    never eliminated.

    Args:
        graph: Conductance-mode graph
        terminals: Non-empty terminal set K
        order: Explicit elimination order of the non-terminals (default min-degree)

    Returns:
        SchurResult whose graph lives on the same id space and only has terminal edges

    Raises:
        GraphError: If K is empty or the order does not match the non-terminals
        SolverError: If elimination produces a non-positive weight
    """
    _require_conductance(graph)
    terminal_set = frozenset(int(k) for k in terminals)
    if not terminal_set:
        raise GraphError("Schur complement needs a non-empty terminal set")
    for k in terminal_set:
        graph.check_vertex(k)

    adjacency = graph.merged_adjacency()
    kept: List[int] = []
    for component in graph.components(sorted(adjacency)):
        if terminal_set.intersection(component):
            kept.extend(component)
        else:
            for a in component:
                adjacency.pop(a, None)
    eliminate = [v for v in kept if v not in terminal_set]

    if order is None:
        order = min_degree_order(adjacency, eliminate)
    else:
        order = [int(v) for v in order if int(v) in adjacency]
        if sorted(order) != sorted(eliminate):
            raise GraphError("Elimination order must list every non-terminal of the terminal components once")

    for v in order:
        _eliminate(adjacency, v)

    result = _graph_from_adjacency(graph.num_vertices, adjacency)
    logger.debug("Schur complement onto %d terminals: eliminated %d, %d edges", len(terminal_set), len(order), result.num_edges)
    return SchurResult(terminals=terminal_set, graph=result, order=list(order))


def schur_complement_matrix(laplacian: np.ndarray, terminals: Sequence[int]) -> np.ndarray:
    """Dense reference L_KK - L_KN L_NN^+ L_NK (rows/columns in ``terminals`` order)."""
    laplacian = np.asarray(laplacian, dtype=np.float64)
    k_idx = np.asarray(list(terminals), dtype=np.int64)
    n_idx = np.setdiff1d(np.arange(laplacian.shape[0]), k_idx)
    l_kk = laplacian[np.ix_(k_idx, k_idx)]
    if n_idx.size == 0:
        return l_kk
    l_kn = laplacian[np.ix_(k_idx, n_idx)]
    l_nn = laplacian[np.ix_(n_idx, n_idx)]
    return l_kk - l_kn @ np.linalg.pinv(l_nn, hermitian=True) @ l_kn.T


def approx_schur(
    graph: WeightedGraph,
    terminals: Iterable[int],
    epsilon: float,
    delta: float,
    seed: int,
    sample_constant: Optional[float] = None,
    strict: Optional[bool] = None,
) -> Tuple[WeightedGraph, SparsifierCertificate]:
    """Spectral sparsifier of the exact Schur complement onto the terminals.

    The sample budget uses |K| vertices and ln(n/delta) with n the number of
    vertices carrying edges in ``graph``.
    """
    schur = exact_schur(graph, terminals)
    n_total = max(2, len(graph.vertices_with_edges()))
    return sparsify_spectral(
        schur.graph,
        epsilon,
        delta,
        seed,
        n_total=n_total,
        num_terminals=len(schur.terminals),
        sample_constant=sample_constant if sample_constant is not None else config.SAMPLING_CONSTANT,
        strict=strict,
    )
