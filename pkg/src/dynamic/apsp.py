"""
Fully dynamic all-pairs shortest paths with per-region distance sparsifiers.
"""

import logging
from typing import FrozenSet, Optional

from config import config
from src.errors import GraphError
from src.dynamic.base_structure import DynamicStructure, RegionSparsifier, UpdateAction
from src.graph.weighted_graph import GraphMode, WeightedGraph
from src.solvers.shortest_paths import shortest_path_length
from src.sparsify.distance import distance_sparsify

logger = logging.getLogger(__name__)


class APSPStructure(DynamicStructure):
    """r-division with per-region (2q-1)-distance sparsifiers; queries run Dijkstra."""

    mode = GraphMode.LENGTH
    query_kind = "QD"

    def __init__(self, graph: WeightedGraph, r: int, q: Optional[int] = None, seed: Optional[int] = None, **kwargs):
        q = config.DEFAULT_SPANNER_Q if q is None else q
        if int(q) != q or q < 1:
            raise GraphError(f"Spanner parameter q must be a positive integer, got {q}")
        self.q = int(q)
        super().__init__(graph, r, seed=seed, **kwargs)

    @property
    def stretch(self) -> int:
        return 2 * self.q - 1

    def sparsify_region(self, region_graph: WeightedGraph, terminals: FrozenSet[int], seed: int) -> RegionSparsifier:
        sparsifier = distance_sparsify(region_graph, terminals, self.q, audit=self.audit)
        return RegionSparsifier(region_id=-1, terminals=terminals, graph=sparsifier, quality=float(self.stretch))

    def evaluate(self, query_graph: WeightedGraph, s: int, t: int) -> float:
        return shortest_path_length(query_graph, s, t)


def apsp_new(graph: WeightedGraph, r: int, q: Optional[int] = None, seed: Optional[int] = None, **kwargs) -> APSPStructure:
    return APSPStructure(graph, r, q=q, seed=seed, **kwargs)


def apsp_update(structure: APSPStructure, action: UpdateAction) -> None:
    structure.apply_update(action)


def apsp_query(structure: APSPStructure, s: int, t: int) -> float:
    return structure.query(s, t)
