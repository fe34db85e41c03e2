"""
Seeded instance generators: grids, random planar graphs, OMv matrices and
update/query scripts that keep a planar instance planar.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from src.errors import GraphError, QueryError
from src.graph.weighted_graph import WeightedGraph
from src.parsing.instance_parser import ScriptOp, VectorPair

logger = logging.getLogger(__name__)

EdgeTriple = Tuple[int, int, float]

GENERATOR_KINDS = ("grid", "random-planar", "omv")
SCRIPT_QUERY_KIND = {"eflow": "Q", "maxflow": "QF", "apsp": "QD", "subgraph": "Q"}


@dataclass
class PlanarInstance:
    """A generated planar graph with the planar edges removed during generation."""

    graph: WeightedGraph
    removed: List[EdgeTriple] = field(default_factory=list)


def grid_graph(num_vertices: int, weight: float = 1.0) -> PlanarInstance:
    """
    Lattice with isqrt(n) rows; row-major vertex ids.

    A 16-vertex request gives the 4 x 4 grid with 24 edges. When n is not a
    perfect square the last partial row is dropped.
    """
    if num_vertices < 1:
        raise GraphError(f"Grid needs at least one vertex, got {num_vertices}")
    rows = math.isqrt(num_vertices)
    cols = num_vertices // rows
    if rows * cols != num_vertices:
        logger.warning("Grid of %d vertices is not rectangular; using %d x %d", num_vertices, rows, cols)

    graph = WeightedGraph(rows * cols)
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                graph.add_edge(v, v + 1, weight)
            if i + 1 < rows:
                graph.add_edge(v, v + cols, weight)
    return PlanarInstance(graph)


def _random_weight(rng: np.random.Generator, low: float, high: float) -> float:
    return round(float(rng.uniform(low, high)), 4)


def random_planar_graph(
    num_vertices: int,
    seed: int = 0,
    delete_fraction: float = 0.2,
    weight_range: Tuple[float, float] = (0.5, 2.0),
) -> PlanarInstance:
    """
    Random stacked triangulation with a fraction of its edges deleted.

    Each new vertex lands in a uniformly chosen face of the current
    triangulation and joins the face's three corners. The deleted edges are
    kept so scripts can re-insert them without breaking planarity.
    """
    if num_vertices < 1:
        raise GraphError(f"Random planar graph needs at least one vertex, got {num_vertices}")
    if not 0.0 <= delete_fraction < 1.0:
        raise GraphError(f"delete_fraction must lie in [0, 1), got {delete_fraction}")
    rng = np.random.default_rng(seed)
    low, high = weight_range

    edges: List[Tuple[int, int]] = []
    if num_vertices == 2:
        edges.append((0, 1))
    elif num_vertices >= 3:
        edges.extend([(0, 1), (1, 2), (0, 2)])
        faces = [(0, 1, 2), (0, 1, 2)]
        for v in range(3, num_vertices):
            index = int(rng.integers(len(faces)))
            a, b, c = faces[index]
            edges.extend([(a, v), (b, v), (c, v)])
            faces[index] = (a, b, v)
            faces.append((b, c, v))
            faces.append((a, c, v))

    weighted = [(u, v, _random_weight(rng, low, high)) for u, v in edges]
    order = rng.permutation(len(weighted))
    cut = int(round(delete_fraction * len(weighted)))
    removed_index = set(int(i) for i in order[:cut])

    graph = WeightedGraph(num_vertices)
    removed: List[EdgeTriple] = []
    for index, (u, v, w) in enumerate(weighted):
        if index in removed_index:
            removed.append((u, v, w))
        else:
            graph.add_edge(u, v, w)
    return PlanarInstance(graph, removed)


def omv_matrix(size: int, seed: int = 0, density: float = 0.5) -> np.ndarray:
    """Random size x size boolean matrix with the given density of ones."""
    if size < 1:
        raise GraphError(f"OMv matrix size must be positive, got {size}")
    rng = np.random.default_rng(seed)
    return rng.random((size, size)) < density


def omv_queries(shape: Tuple[int, int], count: int, seed: int = 0, density: float = 0.5) -> List[VectorPair]:
    """Random 0/1 row and column selectors for an OMv matrix of the given shape."""
    rng = np.random.default_rng(seed)
    n1, n2 = shape
    return [(rng.random(n1) < density, rng.random(n2) < density) for _ in range(count)]


def random_script(
    instance: PlanarInstance,
    updates: int,
    queries: int,
    seed: int = 0,
    mode: str = "eflow",
) -> List[ScriptOp]:
    """
    Random interleaving of updates and queries.

    Deletions pick a present edge; insertions only re-add an edge deleted
    earlier (during generation or by the script). In subgraph mode updates
    become activations of distinct vertices and queries join active vertices.
    """
    if mode not in SCRIPT_QUERY_KIND:
        raise GraphError(f"Unknown script mode '{mode}'")
    n = instance.graph.num_vertices
    if n < 2 and queries > 0:
        raise GraphError("Queries need at least two vertices")
    rng = np.random.default_rng(seed)
    if mode == "subgraph":
        return _activation_script(n, updates, queries, rng)

    present = sorted((e.key[0], e.key[1], e.weight) for e in instance.graph.edges())
    pool: List[EdgeTriple] = list(instance.removed)
    kind = SCRIPT_QUERY_KIND[mode]
    plan = np.array([True] * updates + [False] * queries)
    rng.shuffle(plan)

    ops: List[ScriptOp] = []
    for is_update in plan:
        if not is_update:
            s, t = (int(x) for x in rng.choice(n, size=2, replace=False))
            ops.append(ScriptOp(kind, s, t))
            continue
        insert = bool(pool) and (not present or rng.random() < 0.5)
        if insert:
            u, v, w = pool.pop(int(rng.integers(len(pool))))
            present.append((u, v, w))
            ops.append(ScriptOp("I", u, v, w))
        elif present:
            u, v, w = present.pop(int(rng.integers(len(present))))
            pool.append((u, v, w))
            ops.append(ScriptOp("D", u, v))
    return ops


def _activation_script(n: int, activations: int, queries: int, rng: np.random.Generator) -> List[ScriptOp]:
    if queries > 0 and min(activations, n) < 2:
        raise QueryError(f"{queries} queries need at least two activations, got {min(activations, n)}")
    if activations > n:
        logger.warning("Only %d vertices can be activated; script has %d activations instead of %d", n, n, activations)
    order = [int(v) for v in rng.permutation(n)[: min(activations, n)]]
    ops: List[ScriptOp] = [ScriptOp("A", v) for v in order[:2]]
    active = order[:2]
    remaining = order[2:]
    plan = np.array([True] * len(remaining) + [False] * queries)
    rng.shuffle(plan)
    for is_activation in plan:
        if is_activation:
            v = remaining.pop(0)
            active.append(v)
            ops.append(ScriptOp("A", v))
        elif len(active) >= 2:
            s, t = (active[int(i)] for i in rng.choice(len(active), size=2, replace=False))
            ops.append(ScriptOp("Q", s, t))
    return ops
