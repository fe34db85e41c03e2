"""
OMv gadget: a boolean product u^T M v answered by one s-t energy query.

Vertex layout: s = 0, t = 1, row vertices 2..n1+1, column vertices n1+2..n1+n2+1.
All edges have unit conductance.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from config import config
from src.dynamic.subgraph import SubgraphEFlow
from src.errors import DimensionError, GraphError, QueryError
from src.graph.weighted_graph import GraphMode, WeightedGraph

logger = logging.getLogger(__name__)


@dataclass
class OMvInstance:
    """Boolean matrix with its gadget graph."""

    matrix: np.ndarray
    graph: WeightedGraph
    source: int = 0
    sink: int = 1

    @property
    def shape(self):
        return self.matrix.shape

    def row_vertex(self, i: int) -> int:
        return 2 + i

    def column_vertex(self, j: int) -> int:
        return 2 + self.matrix.shape[0] + j


def omv_build(matrix: Sequence[Sequence[int]]) -> OMvInstance:
    """
    Build the gadget: s joins every row vertex, t every column vertex, and
    row i joins column j iff M(i, j) = 1.

    Raises:
        GraphError: If the matrix is empty or not two-dimensional
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.size == 0:
        raise GraphError(f"OMv matrix must be a non-empty 2-D array, got shape {m.shape}")
    m = m.astype(bool)
    n1, n2 = m.shape
    graph = WeightedGraph(n1 + n2 + 2, GraphMode.CONDUCTANCE)
    instance = OMvInstance(matrix=m, graph=graph)
    for i in range(n1):
        graph.add_edge(instance.source, instance.row_vertex(i), 1.0)
    for i, j in zip(*np.nonzero(m)):
        graph.add_edge(instance.row_vertex(int(i)), instance.column_vertex(int(j)), 1.0)
    for j in range(n2):
        graph.add_edge(instance.column_vertex(j), instance.sink, 1.0)
    return instance


def omv_engine(
    instance: OMvInstance,
    r: Optional[int] = None,
    epsilon: Optional[float] = None,
    seed: Optional[int] = None,
) -> SubgraphEFlow:
    """Fresh subgraph structure over the gadget with s and t active."""
    n = instance.graph.num_vertices
    r = max(config.MIN_REGION_SIZE, math.ceil(n ** (2.0 / 3.0))) if r is None else r
    epsilon = config.DEFAULT_EPS if epsilon is None else epsilon
    engine = SubgraphEFlow(instance.graph, r, epsilon, seed=seed)
    engine.activate(instance.source)
    engine.activate(instance.sink)
    return engine


def omv_answer(
    instance: OMvInstance,
    u: Sequence[int],
    v: Sequence[int],
    engine: Optional[SubgraphEFlow] = None,
    **engine_options,
) -> int:
    """
    Decide u^T M v by activating the selected rows and columns.

    Args:
        instance: Gadget built by omv_build
        u: Boolean row selector of length n1
        v: Boolean column selector of length n2
        engine: Subgraph structure over the gadget (a fresh one when omitted).
            Activations cannot be undone, so a reused engine only answers
            selections that contain every row and column it already holds.

    Returns:
        1 iff the s-t energy is finite in the activated subgraph

    Raises:
        DimensionError: If u or v has the wrong length
        QueryError: If a reused engine holds rows or columns outside the selection
    """
    u = np.asarray(u).astype(bool)
    v = np.asarray(v).astype(bool)
    n1, n2 = instance.shape
    if u.shape != (n1,) or v.shape != (n2,):
        raise DimensionError(f"Query vectors must have lengths ({n1}, {n2}), got {u.shape} and {v.shape}")

    selected = {instance.row_vertex(int(i)) for i in np.flatnonzero(u)}
    selected |= {instance.column_vertex(int(j)) for j in np.flatnonzero(v)}
    if engine is None:
        engine = omv_engine(instance, **engine_options)
    stale = engine.active - selected - {instance.source, instance.sink}
    if stale:
        raise QueryError(
            f"Engine already activated {len(stale)} rows or columns outside this selection; use a fresh engine"
        )
    for vertex in (instance.source, instance.sink):
        if vertex not in engine.active:
            engine.activate(vertex)
    for vertex in sorted(selected - engine.active):
        engine.activate(vertex)

    energy = engine.query(instance.source, instance.sink)
    return int(math.isfinite(energy))
