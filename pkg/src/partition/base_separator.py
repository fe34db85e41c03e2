"""
Abstract base class for balanced vertex separators.
"""

from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Set

import numpy as np

Adjacency = Mapping[int, Set[int]]


@dataclass
class SeparatorResult:
    """Vertex separator S with the two sides it splits the rest into."""

    separator: Set[int] = field(default_factory=set)
    side_a: Set[int] = field(default_factory=set)
    side_b: Set[int] = field(default_factory=set)
    strategy: str = ""

    @property
    def balance(self) -> int:
        return max(len(self.side_a), len(self.side_b))


class BaseSeparator(ABC):
    """Abstract base class for separator strategies.

    A strategy works on the adjacency of one connected piece and returns a
    set S whose removal leaves no edge between side A and side B.
    """

    def __init__(self, seed: int = 0):
        """
        Initialize the separator.

        Args:
            seed: Seed for the strategy's random choices (start vertices, cycle candidates)
        """
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    @property
    @abstractmethod
    def name(self) -> str:
        """Short identifier used in logs and reports."""
        pass

    @abstractmethod
    def find(self, adjacency: Adjacency) -> SeparatorResult:
        """
        Compute a separator of a connected piece.

        Args:
            adjacency: Vertex -> neighbor set of the piece (symmetric)

        Returns:
            SeparatorResult covering every vertex of the piece exactly once

        Raises:
            SeparatorError: If the strategy cannot produce a balanced separator
        """
        pass

    def is_valid(self, adjacency: Adjacency, result: SeparatorResult) -> bool:
        """
        Check partition, separation and the 2n/3 balance bound.

        Args:
            adjacency: Adjacency the result was computed on
            result: Separator to check

        Returns:
            True if the result is a balanced separator of the piece
        """
        n = len(adjacency)
        parts = (result.separator, result.side_a, result.side_b)
        if sum(len(p) for p in parts) != n or set().union(*parts) != set(adjacency):
            return False
        if any(adjacency[a] & result.side_b for a in result.side_a):
            return False
        return 3 * result.balance <= 2 * n

    def random_vertex(self, adjacency: Adjacency) -> int:
        vertices = sorted(adjacency)
        return vertices[int(self.rng.integers(len(vertices)))]

    @staticmethod
    def bfs_levels(adjacency: Adjacency, root: int) -> List[List[int]]:
        """BFS layers from ``root``; each layer sorted by vertex id."""
        depth: Dict[int, int] = {root: 0}
        layers: List[List[int]] = [[root]]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(adjacency[u]):
                if v not in depth:
                    depth[v] = depth[u] + 1
                    if depth[v] == len(layers):
                        layers.append([])
                    layers[depth[v]].append(v)
                    queue.append(v)
        return [sorted(layer) for layer in layers]

    def pseudo_peripheral(self, adjacency: Adjacency, start: Optional[int] = None) -> int:
        """Vertex found by two farthest-vertex sweeps from a random start."""
        v = self.random_vertex(adjacency) if start is None else start
        for _ in range(2):
            v = self.bfs_levels(adjacency, v)[-1][0]
        return v
