"""
Dynamic weighted undirected multigraph over a dense vertex id space.
"""

import logging
import operator
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from src.errors import GraphError

logger = logging.getLogger(__name__)


class GraphMode(str, Enum):
    """How edge weights are interpreted."""

    CONDUCTANCE = "conductance"
    CAPACITY = "capacity"
    LENGTH = "length"


@dataclass(frozen=True)
class Edge:
    """An undirected edge oriented from ``u`` to ``v``."""

    edge_id: int
    u: int
    v: int
    weight: float

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    @property
    def key(self) -> Tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    @property
    def resistance(self) -> float:
        return 1.0 / self.weight


@dataclass(frozen=True)
class InsertEdge:
    u: int
    v: int
    weight: float


@dataclass(frozen=True)
class DeleteEdge:
    edge_id: int


EdgeAction = Union[InsertEdge, DeleteEdge]


@dataclass(frozen=True)
class ChangeRecord:
    """Outcome of one edge mutation.

    ``degree_crossed_zero`` lists the endpoints whose degree went from 0 to 1
    (insert) or from 1 to 0 (delete).
    """

    kind: str
    edge: Edge
    degree_crossed_zero: Tuple[int, ...] = ()

    @property
    def is_insert(self) -> bool:
        return self.kind == "insert"


class WeightedGraph:
    """Undirected multigraph with positive weights and stable vertex ids."""

    def __init__(self, num_vertices: int, mode: GraphMode = GraphMode.CONDUCTANCE):
        if num_vertices < 0:
            raise GraphError(f"Vertex count must be non-negative, got {num_vertices}")
        self._num_vertices = num_vertices
        self._mode = GraphMode(mode)
        self._edges: Dict[int, Edge] = {}
        self._incident: List[Dict[int, int]] = [dict() for _ in range(num_vertices)]
        self._next_edge_id = 0

    @classmethod
    def from_edges(
        cls,
        num_vertices: int,
        edges: Iterable[Tuple[int, int, float]],
        mode: GraphMode = GraphMode.CONDUCTANCE,
    ) -> "WeightedGraph":
        graph = cls(num_vertices, mode)
        for u, v, w in edges:
            graph.add_edge(u, v, w)
        return graph

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self._num_vertices

    @property
    def mode(self) -> GraphMode:
        return self._mode

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def next_edge_id(self) -> int:
        return self._next_edge_id

    def __len__(self) -> int:
        return self._num_vertices

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self._num_vertices}, m={len(self._edges)}, mode={self._mode.value})"

    def check_vertex(self, v: int) -> None:
        try:
            index = operator.index(v)
        except TypeError:
            index = -1
        if not 0 <= index < self._num_vertices:
            raise GraphError(f"Unknown vertex {v!r} (graph has {self._num_vertices} vertices)")

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise GraphError(f"Unknown edge id {edge_id}") from None

    def has_edge(self, edge_id: int) -> bool:
        return edge_id in self._edges

    def edges(self) -> Iterator[Edge]:
        return iter(self._edges.values())

    def edge_ids(self) -> List[int]:
        return list(self._edges)

    def incident_edges(self, v: int) -> List[Edge]:
        self.check_vertex(v)
        return [self._edges[eid] for eid in self._incident[v]]

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self._incident[v])

    def neighbors(self, v: int) -> Set[int]:
        self.check_vertex(v)
        return set(self._incident[v].values())

    def find_edge(self, u: int, v: int) -> Optional[Edge]:
        """Lowest-id edge joining ``u`` and ``v``, if any."""
        self.check_vertex(u)
        self.check_vertex(v)
        small, other = (u, v) if len(self._incident[u]) <= len(self._incident[v]) else (v, u)
        candidates = [eid for eid, w in self._incident[small].items() if w == other]
        return self._edges[min(candidates)] if candidates else None

    def vertices_with_edges(self) -> List[int]:
        return [v for v in range(self._num_vertices) if self._incident[v]]

    # ------------------------------------------------------------------
    # Mutation
    # ------------------------------------------------------------------

    def add_edge(self, u: int, v: int, weight: float, edge_id: Optional[int] = None) -> Edge:
        self.check_vertex(u)
        self.check_vertex(v)
        u, v = int(u), int(v)
        if u == v:
            raise GraphError(f"Self-loop at vertex {u} is not allowed")
        weight = float(weight)
        if not weight > 0.0 or weight == float("inf"):
            raise GraphError(f"Edge weight must be positive and finite, got {weight}")

        if edge_id is None:
            edge_id = self._next_edge_id
        elif edge_id in self._edges:
            raise GraphError(f"Edge id {edge_id} already in use")
        self._next_edge_id = max(self._next_edge_id, edge_id + 1)

        edge = Edge(edge_id, u, v, weight)
        self._edges[edge_id] = edge
        self._incident[u][edge_id] = v
        self._incident[v][edge_id] = u
        return edge

    def remove_edge(self, edge_id: int) -> Edge:
        edge = self.edge(edge_id)
        del self._edges[edge_id]
        del self._incident[edge.u][edge_id]
        del self._incident[edge.v][edge_id]
        return edge

    def mutate_edge(self, action: EdgeAction) -> ChangeRecord:
        """Apply an insertion or deletion and describe what changed."""
        if isinstance(action, InsertEdge):
            self.check_vertex(action.u)
            self.check_vertex(action.v)
            fresh = tuple(x for x in (action.u, action.v) if not self._incident[x])
            edge = self.add_edge(action.u, action.v, action.weight)
            return ChangeRecord("insert", edge, fresh)

        if isinstance(action, DeleteEdge):
            edge = self.remove_edge(action.edge_id)
            isolated = tuple(x for x in (edge.u, edge.v) if not self._incident[x])
            return ChangeRecord("delete", edge, isolated)

        raise GraphError(f"Unsupported edge action: {action!r}")

    # ------------------------------------------------------------------
    # Derived views
    # ------------------------------------------------------------------

    def merged_weights(self) -> Dict[Tuple[int, int], float]:
        """Parallel edges merged by sum (conductance/capacity) or min (length)."""
        merged: Dict[Tuple[int, int], float] = {}
        if self._mode is GraphMode.LENGTH:
            for edge in self._edges.values():
                key = edge.key
                current = merged.get(key)
                merged[key] = edge.weight if current is None else min(current, edge.weight)
        else:
            for edge in self._edges.values():
                key = edge.key
                merged[key] = merged.get(key, 0.0) + edge.weight
        return merged

    def merged_adjacency(self) -> Dict[int, Dict[int, float]]:
        """Symmetric adjacency map over vertices that carry edges."""
        adjacency: Dict[int, Dict[int, float]] = {}
        for (a, b), w in self.merged_weights().items():
            adjacency.setdefault(a, {})[b] = w
            adjacency.setdefault(b, {})[a] = w
        return adjacency

    def edge_multiset(self) -> Counter:
        return Counter((e.key[0], e.key[1], e.weight) for e in self._edges.values())

    def copy(self) -> "WeightedGraph":
        clone = WeightedGraph(self._num_vertices, self._mode)
        for edge in self._edges.values():
            clone.add_edge(edge.u, edge.v, edge.weight, edge_id=edge.edge_id)
        clone._next_edge_id = self._next_edge_id
        return clone

    def with_mode(self, mode: GraphMode) -> "WeightedGraph":
        clone = self.copy()
        clone._mode = GraphMode(mode)
        return clone

    def subgraph_from_edges(self, edge_ids: Iterable[int]) -> "WeightedGraph":
        """Subgraph on the same id space keeping the given edges and their ids."""
        sub = WeightedGraph(self._num_vertices, self._mode)
        for eid in sorted(edge_ids):
            edge = self.edge(eid)
            sub.add_edge(edge.u, edge.v, edge.weight, edge_id=eid)
        return sub

    def laplacian(self) -> "LaplacianView":
        from src.graph.laplacian import LaplacianView

        return LaplacianView(self)

    # ------------------------------------------------------------------
    # Connectivity
    # ------------------------------------------------------------------

    def component_of(self, source: int) -> Set[int]:
        self.check_vertex(source)
        seen = {source}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self._incident[x].values():
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def components(self, vertices: Optional[Sequence[int]] = None) -> List[List[int]]:
        """Connected components (sorted vertex lists) of the given or all vertices."""
        pool = range(self._num_vertices) if vertices is None else vertices
        seen: Set[int] = set()
        result = []
        for v in pool:
            if v in seen:
                continue
            component = self.component_of(v)
            seen |= component
            result.append(sorted(component))
        return result


def mutate_edge(graph: WeightedGraph, action: EdgeAction) -> ChangeRecord:
    return graph.mutate_edge(action)


def graph_union(
    parts: Sequence[WeightedGraph],
    num_vertices: Optional[int] = None,
    mode: Optional[GraphMode] = None,
) -> WeightedGraph:
    """Edge-multiset union of graphs sharing one vertex id space.

    Edge ids are reassigned; the Laplacian of the result is the sum of the
    parts' Laplacians.
    """
    if not parts:
        return WeightedGraph(num_vertices or 0, mode or GraphMode.CONDUCTANCE)

    n = parts[0].num_vertices if num_vertices is None else num_vertices
    target_mode = parts[0].mode if mode is None else GraphMode(mode)
    union = WeightedGraph(n, target_mode)
    for index, part in enumerate(parts):
        if part.num_vertices != n:
            raise GraphError(
                f"Part {index} has {part.num_vertices} vertices, expected a shared id space of {n}"
            )
        if part.mode is not target_mode:
            raise GraphError(f"Part {index} is in {part.mode.value} mode, expected {target_mode.value}")
        for edge in part.edges():
            union.add_edge(edge.u, edge.v, edge.weight)
    return union


def induced_subgraph(graph: WeightedGraph, active: Iterable[int]) -> WeightedGraph:
    """Edges with both endpoints active; the vertex id space is preserved."""
    active_set = set(active)
    for v in active_set:
        graph.check_vertex(v)
    sub = WeightedGraph(graph.num_vertices, graph.mode)
    for edge in graph.edges():
        if edge.u in active_set and edge.v in active_set:
            sub.add_edge(edge.u, edge.v, edge.weight, edge_id=edge.edge_id)
    return sub


def connected(graph: WeightedGraph, s: int, t: int) -> bool:
    graph.check_vertex(t)
    if s == t:
        return True
    return t in graph.component_of(s)
