"""
Incremental subgraph model: electrical flow queries on the subgraph induced by activated vertices.

The r-division is computed once over the full graph. A region's sparsifier
is built on its active-induced piece with terminals ∂_G(P) ∩ V(P[S]); this
set contains the boundary of P[S] inside G[S], so the Schur complement stays exact.
"""

import logging
import math
from typing import Dict, Optional, Set, Union

from config import config
from src.data_models import StructureStats
from src.dynamic.base_structure import RegionSparsifier
from src.errors import DivisionError, GraphError, QueryError
from src.graph.weighted_graph import GraphMode, WeightedGraph, graph_union
from src.partition.base_separator import BaseSeparator
from src.partition.rdivision import build_rdivision
from src.solvers.resistance import effective_resistance
from src.sparsify.schur import approx_schur
from src.utils.seeding import derive_seed

logger = logging.getLogger(__name__)


class SubgraphEFlow:
    """Electrical flow energies on G[S] under vertex activations."""

    def __init__(
        self,
        graph: WeightedGraph,
        r: int,
        epsilon: float,
        seed: Optional[int] = None,
        delta: Optional[float] = None,
        separator: Union[str, BaseSeparator, None] = None,
        sample_constant: Optional[float] = None,
        min_region_size: Optional[int] = None,
    ):
        min_region_size = config.MIN_REGION_SIZE if min_region_size is None else min_region_size
        if r < min_region_size:
            raise DivisionError(f"Region size bound r={r} is below the minimum {min_region_size}")
        if not 0.0 < epsilon < 1.0:
            raise GraphError(f"epsilon must lie in (0, 1), got {epsilon}")
        self.graph = graph.copy() if graph.mode is GraphMode.CONDUCTANCE else graph.with_mode(GraphMode.CONDUCTANCE)
        self.r = int(r)
        self.epsilon = epsilon
        self.seed = config.DEFAULT_SEED if seed is None else int(seed)
        n = max(self.graph.num_vertices, 2)
        self.delta = min(0.5, 1.0 / n ** 3) if delta is None else delta
        self.sample_constant = sample_constant

        self.division = build_rdivision(self.graph, self.r, separator=separator, seed=self.seed)
        self.active: Set[int] = set()
        self.sparsifiers: Dict[int, RegionSparsifier] = {}
        self.stats = StructureStats()
        self.activation_builds: Dict[int, int] = {}

    def __repr__(self) -> str:
        return f"SubgraphEFlow(n={self.graph.num_vertices}, r={self.r}, active={len(self.active)})"

    @property
    def scale(self) -> float:
        return 1.0 - self.epsilon / 6.0

    def active_region_graph(self, region_id: int) -> WeightedGraph:
        region = self.division.region(region_id)
        edges = [
            edge_id
            for edge_id in region.edges
            if self.graph.edge(edge_id).u in self.active and self.graph.edge(edge_id).v in self.active
        ]
        return self.graph.subgraph_from_edges(edges)

    def _build_region(self, region_id: int) -> RegionSparsifier:
        piece = self.active_region_graph(region_id)
        terminals = frozenset(self.division.region(region_id).boundary.intersection(piece.vertices_with_edges()))
        self.stats.sparsifier_builds += 1
        if not terminals:
            return RegionSparsifier(region_id, terminals, WeightedGraph(self.graph.num_vertices, GraphMode.CONDUCTANCE))
        sparsifier, certificate = approx_schur(
            piece,
            terminals,
            self.epsilon / 6.0,
            self.delta,
            derive_seed(self.seed, region_id),
            sample_constant=self.sample_constant,
        )
        return RegionSparsifier(region_id, terminals, sparsifier, certificate=certificate)

    def activate(self, v: int) -> int:
        """
        Activate a vertex and refresh every region containing it.

        Args:
            v: Vertex to activate

        Returns:
            Number of region sparsifiers recomputed (b(v), or 0 for isolated vertices)

        Raises:
            GraphError: If v is unknown or already active
        """
        self.graph.check_vertex(v)
        v = int(v)
        if v in self.active:
            raise GraphError(f"Vertex {v} is already active")
        self.active.add(v)
        regions = sorted(self.division.regions_of(v))
        for region_id in regions:
            self.sparsifiers[region_id] = self._build_region(region_id)
        self.activation_builds[v] = len(regions)
        self.stats.updates += 1
        self.stats.last_update_builds = len(regions)
        logger.debug("Activated %d: %d region sparsifiers rebuilt", v, len(regions))
        return len(regions)

    def query(self, s: int, t: int) -> float:
        """
        (1 - eps/6) times the effective resistance between s and t in the assembled graph.

        Raises:
            QueryError: If an endpoint is unknown or inactive, or s = t
        """
        try:
            self.graph.check_vertex(s)
            self.graph.check_vertex(t)
        except GraphError as e:
            raise QueryError(str(e)) from None
        for x in (s, t):
            if x not in self.active:
                raise QueryError(f"Vertex {x} is not active")
        if s == t:
            raise QueryError(f"Query endpoints must differ, got s = t = {s}")

        self.stats.queries += 1
        home_s, home_t = self.division.home_region(s), self.division.home_region(t)
        if home_s is None or home_t is None:
            return math.inf
        full = {home_s, home_t}
        parts = [self.active_region_graph(region_id) for region_id in sorted(full)]
        parts += [sp.graph for region_id, sp in sorted(self.sparsifiers.items()) if region_id not in full]
        query_graph = graph_union(parts, num_vertices=self.graph.num_vertices, mode=GraphMode.CONDUCTANCE)
        self.stats.last_query_vertices = len(query_graph.vertices_with_edges())
        self.stats.last_query_edges = query_graph.num_edges

        psi = effective_resistance(query_graph, s, t)
        return psi if math.isinf(psi) else self.scale * psi


def sg_new(graph: WeightedGraph, r: int, epsilon: float, seed: Optional[int] = None, **kwargs) -> SubgraphEFlow:
    return SubgraphEFlow(graph, r, epsilon, seed=seed, **kwargs)


def sg_activate(structure: SubgraphEFlow, v: int) -> int:
    return structure.activate(v)


def sg_query(structure: SubgraphEFlow, s: int, t: int) -> float:
    return structure.query(s, t)
