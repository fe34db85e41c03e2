"""
Exact maximum flow on undirected capacity graphs (Dinic's blocking flows).
"""

import logging
from collections import deque
from typing import Dict, Iterable, List, Optional

from src.errors import GraphError
from src.graph.weighted_graph import WeightedGraph

logger = logging.getLogger(__name__)

_RESIDUAL_EPS = 1e-12


class FlowNetwork:
    """Residual network; arcs ``a`` and ``a ^ 1`` are each other's reverse."""

    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self.head: List[List[int]] = [[] for _ in range(num_nodes)]
        self.to: List[int] = []
        self.cap: List[float] = []

    def add_undirected(self, u: int, v: int, capacity: float) -> None:
        if u == v:
            return
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(capacity)

    def _levels(self, s: int, t: int) -> Optional[List[int]]:
        level = [-1] * self.num_nodes
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.head[u]:
                v = self.to[a]
                if level[v] < 0 and self.cap[a] > _RESIDUAL_EPS:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _augment(self, s: int, t: int, level: List[int], cursor: List[int]) -> float:
        path: List[int] = []
        u = s
        while True:
            if u == t:
                bottleneck = min(self.cap[a] for a in path)
                for a in path:
                    self.cap[a] -= bottleneck
                    self.cap[a ^ 1] += bottleneck
                return bottleneck

            arcs = self.head[u]
            while cursor[u] < len(arcs):
                a = arcs[cursor[u]]
                v = self.to[a]
                if self.cap[a] > _RESIDUAL_EPS and level[v] == level[u] + 1:
                    path.append(a)
                    u = v
                    break
                cursor[u] += 1
            else:
                if u == s:
                    return 0.0
                # dead end: retreat and never revisit u in this phase
                level[u] = -1
                a = path.pop()
                u = self.to[a ^ 1]
                cursor[u] += 1

    def max_flow(self, s: int, t: int) -> float:
        total = 0.0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            cursor = [0] * self.num_nodes
            while True:
                pushed = self._augment(s, t, level, cursor)
                if pushed <= _RESIDUAL_EPS:
                    break
                total += pushed

    def source_side(self, s: int) -> List[int]:
        """Nodes reachable from ``s`` in the residual network."""
        seen = [False] * self.num_nodes
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.head[u]:
                v = self.to[a]
                if not seen[v] and self.cap[a] > _RESIDUAL_EPS:
                    seen[v] = True
                    queue.append(v)
        return [v for v in range(self.num_nodes) if seen[v]]


def _network_with_groups(graph: WeightedGraph, source_group: Iterable[int], sink_group: Iterable[int]) -> FlowNetwork:
    """Network with every source-group vertex merged into node 0 and sink-group vertex into node 1."""
    node: Dict[int, int] = {}
    for v in source_group:
        node[v] = 0
    for v in sink_group:
        node[v] = 1
    next_node = 2
    for v in graph.vertices_with_edges():
        if v not in node:
            node[v] = next_node
            next_node += 1

    network = FlowNetwork(max(next_node, 2))
    for (a, b), capacity in graph.merged_weights().items():
        network.add_undirected(node[a], node[b], capacity)
    return network


def max_flow(graph: WeightedGraph, s: int, t: int) -> float:
    """Exact s-t max-flow value; 0 when s and t are disconnected."""
    graph.check_vertex(s)
    graph.check_vertex(t)
    if s == t:
        raise GraphError(f"Max flow needs distinct endpoints, got s = t = {s}")
    return _network_with_groups(graph, [s], [t]).max_flow(0, 1)


def terminal_cut_value(graph: WeightedGraph, terminals: Iterable[int], side: Iterable[int]) -> float:
    """Minimum cut separating terminal subset ``side`` from the remaining terminals.

    Computed by contracting ``side`` into a super-source and the other terminals
    into a super-sink, then running max flow.
    """
    terminal_set = set(terminals)
    side_set = set(side)
    for v in terminal_set:
        graph.check_vertex(v)
    if not side_set or not side_set < terminal_set:
        raise GraphError(
            f"Terminal side must be a non-empty proper subset of the terminals, got {sorted(side_set)}"
        )
    network = _network_with_groups(graph, side_set, terminal_set - side_set)
    return network.max_flow(0, 1)
