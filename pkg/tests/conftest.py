"""
Shared fixtures and small graph builders for the test suite.
"""

import numpy as np
import pytest

from src.graph.weighted_graph import GraphMode, WeightedGraph
from src.utils.generators import grid_graph, random_planar_graph


def path_graph(n: int, weight: float = 1.0, mode: GraphMode = GraphMode.CONDUCTANCE) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, i + 1, weight) for i in range(n - 1)], mode=mode)


def cycle_graph(n: int, weight: float = 1.0, mode: GraphMode = GraphMode.CONDUCTANCE) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n, weight) for i in range(n)], mode=mode)


def random_connected_graph(n: int, extra_edges: int, seed: int, mode: GraphMode = GraphMode.CONDUCTANCE) -> WeightedGraph:
    """Random spanning tree plus ``extra_edges`` random chords, weights in [0.5, 2]."""
    rng = np.random.default_rng(seed)
    graph = WeightedGraph(n, mode)
    order = rng.permutation(n)
    for i in range(1, n):
        parent = order[int(rng.integers(i))]
        graph.add_edge(int(order[i]), int(parent), float(rng.uniform(0.5, 2.0)))
    for _ in range(extra_edges):
        u, v = rng.choice(n, size=2, replace=False)
        graph.add_edge(int(u), int(v), float(rng.uniform(0.5, 2.0)))
    return graph


def random_tree(n: int, seed: int, mode: GraphMode = GraphMode.CONDUCTANCE) -> WeightedGraph:
    return random_connected_graph(n, 0, seed, mode)


@pytest.fixture
def triangle() -> WeightedGraph:
    return WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def path4() -> WeightedGraph:
    return path_graph(4)


@pytest.fixture
def grid64() -> WeightedGraph:
    return grid_graph(64).graph


@pytest.fixture
def planar60():
    return random_planar_graph(60, seed=3)
