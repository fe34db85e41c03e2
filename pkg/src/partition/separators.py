"""
Separator strategies: BFS-level with fundamental-cycle refinement, and BFS bisection.
"""

import logging
import math
from collections import deque
from typing import Dict, List, Optional, Set, Tuple, Union

from config import config
from src.errors import SeparatorError
from src.graph.weighted_graph import WeightedGraph
from src.partition.base_separator import Adjacency, BaseSeparator, SeparatorResult

logger = logging.getLogger(__name__)


def _components_without(adjacency: Adjacency, removed: Set[int]) -> List[Set[int]]:
    seen: Set[int] = set(removed)
    result = []
    for v in sorted(adjacency):
        if v in seen:
            continue
        seen.add(v)
        component = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    component.add(y)
                    queue.append(y)
        result.append(component)
    return result


def _group_sides(components: List[Set[int]]) -> Tuple[Set[int], Set[int]]:
    """Largest-first assignment of components to the currently smaller side."""
    side_a: Set[int] = set()
    side_b: Set[int] = set()
    for component in sorted(components, key=lambda c: (-len(c), min(c))):
        if len(side_a) <= len(side_b):
            side_a |= component
        else:
            side_b |= component
    return side_a, side_b


class BFSLevelSeparator(BaseSeparator):
    """Smallest BFS level splitting the piece into parts of at most 2n/3 vertices.

    When that level is larger than ``separator_c * sqrt(n)`` a few fundamental
    cycles of the BFS tree are tried as well and the smallest balanced one wins.
    """

    def __init__(self, seed: int = 0, separator_c: Optional[float] = None, max_cycles: int = 32):
        super().__init__(seed)
        self.separator_c = config.SEPARATOR_C if separator_c is None else separator_c
        self.max_cycles = max_cycles

    @property
    def name(self) -> str:
        return "bfs-level"

    def find(self, adjacency: Adjacency) -> SeparatorResult:
        n = len(adjacency)
        if n <= 1:
            return SeparatorResult(side_a=set(adjacency), strategy=self.name)

        root = self.pseudo_peripheral(adjacency)
        layers = self.bfs_levels(adjacency, root)
        if sum(len(layer) for layer in layers) != n:
            raise SeparatorError(f"BFS-level separator needs a connected piece ({n} vertices)")

        best: Optional[Tuple[Tuple[int, int], int]] = None
        before = 0
        for i, layer in enumerate(layers):
            after = n - before - len(layer)
            if 3 * before <= 2 * n and 3 * after <= 2 * n:
                score = (len(layer), max(before, after))
                if best is None or score < best[0]:
                    best = (score, i)
            before += len(layer)
        if best is None:
            raise SeparatorError(f"No balanced BFS level on a {n}-vertex piece")

        level = best[1]
        result = SeparatorResult(
            separator=set(layers[level]),
            side_a={v for layer in layers[:level] for v in layer},
            side_b={v for layer in layers[level + 1:] for v in layer},
            strategy=self.name,
        )

        if len(result.separator) > self.separator_c * math.sqrt(n):
            cycle = self._best_cycle(adjacency, root)
            if cycle is not None and len(cycle.separator) < len(result.separator):
                logger.debug("Fundamental cycle of %d vertices replaces level of %d", len(cycle.separator), len(result.separator))
                result = cycle
        return result

    def _best_cycle(self, adjacency: Adjacency, root: int) -> Optional[SeparatorResult]:
        n = len(adjacency)
        parent: Dict[int, int] = {root: root}
        depth: Dict[int, int] = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(adjacency[u]):
                if v not in parent:
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)

        non_tree = [
            (u, v)
            for u in sorted(adjacency)
            for v in sorted(adjacency[u])
            if u < v and parent[u] != v and parent[v] != u
        ]
        if not non_tree:
            return None
        if len(non_tree) > self.max_cycles:
            picks = self.rng.choice(len(non_tree), size=self.max_cycles, replace=False)
            non_tree = [non_tree[i] for i in sorted(picks)]

        best: Optional[SeparatorResult] = None
        for u, v in non_tree:
            cycle = {u, v}
            a, b = u, v
            while a != b:
                if depth[a] >= depth[b]:
                    a = parent[a]
                else:
                    b = parent[b]
                cycle.add(a)
                cycle.add(b)

            side_a, side_b = _group_sides(_components_without(adjacency, cycle))
            if 3 * max(len(side_a), len(side_b)) > 2 * n:
                continue
            candidate = SeparatorResult(separator=cycle, side_a=side_a, side_b=side_b, strategy="fundamental-cycle")
            if best is None or (len(cycle), candidate.balance) < (len(best.separator), best.balance):
                best = candidate
        return best


class BFSBisectionSeparator(BaseSeparator):
    """First half of a BFS order; its vertices with a neighbor in the second half form S."""

    @property
    def name(self) -> str:
        return "bfs-bisection"

    def find(self, adjacency: Adjacency) -> SeparatorResult:
        n = len(adjacency)
        if n <= 1:
            return SeparatorResult(side_a=set(adjacency), strategy=self.name)

        root = self.pseudo_peripheral(adjacency)
        order = [v for layer in self.bfs_levels(adjacency, root) for v in layer]
        if len(order) != n:
            raise SeparatorError(f"BFS bisection needs a connected piece ({n} vertices)")

        first_half = set(order[: (n + 1) // 2])
        separator = {v for v in first_half if adjacency[v] - first_half}
        return SeparatorResult(
            separator=separator,
            side_a=first_half - separator,
            side_b=set(order[(n + 1) // 2:]),
            strategy=self.name,
        )


SEPARATOR_STRATEGIES = {
    "bfs-level": BFSLevelSeparator,
    "bfs-bisection": BFSBisectionSeparator,
}


def get_separator(strategy: Union[str, BaseSeparator, None] = None, seed: int = 0) -> BaseSeparator:
    """Resolve a strategy name (or instance) to a separator object."""
    if isinstance(strategy, BaseSeparator):
        return strategy
    name = strategy or "bfs-level"
    if name not in SEPARATOR_STRATEGIES:
        raise SeparatorError(f"Unknown separator strategy '{name}'; choose from {sorted(SEPARATOR_STRATEGIES)}")
    return SEPARATOR_STRATEGIES[name](seed=seed)


def graph_adjacency(graph: WeightedGraph, vertices: Optional[Set[int]] = None) -> Dict[int, Set[int]]:
    """Simple adjacency of the graph (parallel edges collapsed), optionally restricted."""
    pool = range(graph.num_vertices) if vertices is None else sorted(vertices)
    keep = None if vertices is None else set(vertices)
    return {v: {w for w in graph.neighbors(v) if keep is None or w in keep} for v in pool}


def find_separator(
    graph: WeightedGraph,
    strategy: Union[str, BaseSeparator, None] = None,
    seed: int = 0,
) -> SeparatorResult:
    """Balanced separator of a connected graph.

    Isolated vertices are ignored unless the graph has a single vertex. Falls
    back to BFS bisection when the chosen strategy fails or returns an
    unbalanced result.
    """
    vertices = graph.vertices_with_edges()
    if not vertices:
        if graph.num_vertices == 1:
            return SeparatorResult(side_a={0}, strategy="trivial")
        return SeparatorResult(strategy="trivial")

    adjacency = graph_adjacency(graph, set(vertices))
    separator = get_separator(strategy, seed)
    try:
        result = separator.find(adjacency)
        if separator.is_valid(adjacency, result):
            return result
        logger.warning("Separator strategy %s returned an unbalanced split; falling back to bisection", separator.name)
    except SeparatorError as e:
        logger.warning("Separator strategy %s failed (%s); falling back to bisection", separator.name, e)

    if len(graph.components(vertices)) > 1:
        raise SeparatorError("find_separator expects a connected graph; split components first")
    return BFSBisectionSeparator(seed=seed).find(adjacency)
