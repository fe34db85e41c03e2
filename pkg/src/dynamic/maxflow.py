"""
Fully dynamic all-pairs max flow with per-region terminal cut sparsifiers.
"""

import logging
from typing import FrozenSet, Optional, Union

from src.dynamic.base_structure import DynamicStructure, RegionSparsifier, UpdateAction
from src.graph.weighted_graph import GraphMode, WeightedGraph
from src.solvers.maxflow import max_flow
from src.sparsify.cut import CutStrategy, cut_sparsify

logger = logging.getLogger(__name__)


class MaxFlowStructure(DynamicStructure):
    """r-division with per-region cut sparsifiers; queries run exact max flow."""

    mode = GraphMode.CAPACITY
    query_kind = "QF"
    unreachable_value = 0.0

    def __init__(
        self,
        graph: WeightedGraph,
        r: int,
        seed: Optional[int] = None,
        strategy: Union[str, CutStrategy, None] = None,
        **kwargs,
    ):
        self.strategy = strategy
        super().__init__(graph, r, seed=seed, **kwargs)

    @property
    def quality(self) -> float:
        """Largest declared quality over the current region sparsifiers."""
        return max((s.quality for s in self.sparsifiers.values()), default=1.0)

    def sparsify_region(self, region_graph: WeightedGraph, terminals: FrozenSet[int], seed: int) -> RegionSparsifier:
        sparsifier = cut_sparsify(region_graph, terminals, self.strategy)
        return RegionSparsifier(
            region_id=-1,
            terminals=terminals,
            graph=sparsifier.graph,
            quality=sparsifier.quality,
        )

    def evaluate(self, query_graph: WeightedGraph, s: int, t: int) -> float:
        return max_flow(query_graph, s, t)


def mf_new(graph: WeightedGraph, r: int, seed: Optional[int] = None, **kwargs) -> MaxFlowStructure:
    return MaxFlowStructure(graph, r, seed=seed, **kwargs)


def mf_update(structure: MaxFlowStructure, action: UpdateAction) -> None:
    structure.apply_update(action)


def mf_query(structure: MaxFlowStructure, s: int, t: int) -> float:
    return structure.query(s, t)
