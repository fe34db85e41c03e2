"""
Fully dynamic all-pairs electrical flow energy.

Each region is replaced by an approximate Schur complement onto its boundary
with accuracy eps/6 and failure probability 1/n^3; queries return
(1 - eps/6) times the exact effective resistance of the assembled graph.
"""

import logging
import math
from typing import FrozenSet, Optional

from src.errors import GraphError
from src.dynamic.base_structure import DynamicStructure, RegionSparsifier, UpdateAction
from src.graph.weighted_graph import GraphMode, WeightedGraph
from src.solvers.resistance import effective_resistance
from src.sparsify.schur import approx_schur

logger = logging.getLogger(__name__)


class EFlowStructure(DynamicStructure):
    """r-division with per-region approximate Schur complements."""

    mode = GraphMode.CONDUCTANCE
    query_kind = "Q"
    unreachable_value = math.inf

    def __init__(
        self,
        graph: WeightedGraph,
        r: int,
        epsilon: float,
        seed: Optional[int] = None,
        delta: Optional[float] = None,
        sample_constant: Optional[float] = None,
        **kwargs,
    ):
        if not 0.0 < epsilon < 1.0:
            raise GraphError(f"epsilon must lie in (0, 1), got {epsilon}")
        self.epsilon = epsilon
        n = max(graph.num_vertices, 2)
        self.delta = min(0.5, 1.0 / n ** 3) if delta is None else delta
        self.sample_constant = sample_constant
        super().__init__(graph, r, seed=seed, **kwargs)

    @property
    def scale(self) -> float:
        return 1.0 - self.epsilon / 6.0

    def sparsify_region(self, region_graph: WeightedGraph, terminals: FrozenSet[int], seed: int) -> RegionSparsifier:
        sparsifier, certificate = approx_schur(
            region_graph,
            terminals,
            self.epsilon / 6.0,
            self.delta,
            seed,
            sample_constant=self.sample_constant,
        )
        return RegionSparsifier(region_id=-1, terminals=terminals, graph=sparsifier, certificate=certificate)

    def evaluate(self, query_graph: WeightedGraph, s: int, t: int) -> float:
        psi = effective_resistance(query_graph, s, t)
        return psi if math.isinf(psi) else self.scale * psi


def ef_new(graph: WeightedGraph, r: int, epsilon: float, seed: Optional[int] = None, **kwargs) -> EFlowStructure:
    return EFlowStructure(graph, r, epsilon, seed=seed, **kwargs)


def ef_update(structure: EFlowStructure, action: UpdateAction) -> None:
    structure.apply_update(action)


def ef_query(structure: EFlowStructure, s: int, t: int) -> float:
    return structure.query(s, t)
