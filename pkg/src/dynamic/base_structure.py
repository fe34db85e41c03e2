"""
Abstract base class for the dynamic r-division structures.

A structure keeps a private copy of the graph, an r-division of it and one
sparsifier per region built on the region's boundary vertices. Queries run
on the union of the regions holding s and t with every other region's
sparsifier. The whole structure is rebuilt every ``rebuild_period`` updates.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Optional, Set, Union

import networkx as nx

from config import config
from src.data_models import DivisionReport, SparsifierCertificate, StructureStats
from src.errors import DivisionError, GraphError, InvariantViolation, QueryError
from src.graph.weighted_graph import ChangeRecord, DeleteEdge, EdgeAction, GraphMode, InsertEdge, WeightedGraph, graph_union
from src.partition.base_separator import BaseSeparator
from src.partition.rdivision import RDivision, division_update, iter_rdivision, validate_rdivision
from src.utils.seeding import derive_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeleteBetween:
    """Delete the lowest-id edge joining ``u`` and ``v``."""

    u: int
    v: int


UpdateAction = Union[InsertEdge, DeleteEdge, DeleteBetween]


@dataclass
class RegionSparsifier:
    """Sparsifier of one region on its boundary vertices."""

    region_id: int
    terminals: FrozenSet[int]
    graph: WeightedGraph
    certificate: Optional[SparsifierCertificate] = None
    quality: float = 1.0
    extra: Dict[str, float] = field(default_factory=dict)


def resolve_action(graph: WeightedGraph, action: UpdateAction) -> EdgeAction:
    """Turn an endpoint-based deletion into an edge-id deletion."""
    if isinstance(action, DeleteBetween):
        edge = graph.find_edge(action.u, action.v)
        if edge is None:
            raise GraphError(f"No edge between {action.u} and {action.v} to delete")
        return DeleteEdge(edge.edge_id)
    if isinstance(action, (InsertEdge, DeleteEdge)):
        return action
    raise GraphError(f"Unsupported update action: {action!r}")


def planarity_check(graph: WeightedGraph, action: InsertEdge) -> bool:
    """Whether the graph stays planar after inserting the edge."""
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(graph.num_vertices))
    nx_graph.add_edges_from((e.u, e.v) for e in graph.edges())
    nx_graph.add_edge(action.u, action.v)
    is_planar, _ = nx.check_planarity(nx_graph)
    return is_planar


class DynamicStructure(ABC):
    """Abstract base class for dynamic structures over an r-division."""

    mode: GraphMode = GraphMode.CONDUCTANCE
    query_kind: str = "Q"
    unreachable_value: float = math.inf

    def __init__(
        self,
        graph: WeightedGraph,
        r: int,
        seed: Optional[int] = None,
        separator: Union[str, BaseSeparator, None] = None,
        rebuild_constant: Optional[float] = None,
        min_region_size: Optional[int] = None,
        audit: bool = False,
        auto_rebuild: bool = True,
        build: bool = True,
    ):
        """
        Initialize the structure.

        Args:
            graph: Input graph (copied; converted to the structure's mode)
            r: Region size bound
            seed: Master seed for separators and sparsifiers
            separator: Separator strategy name or instance
            rebuild_constant: c_T in the rebuild period c_T * n / r
            min_region_size: Smallest admissible r (default config.MIN_REGION_SIZE)
            audit: Validate the division after every update and check planarity of insertions
            auto_rebuild: Rebuild from scratch every rebuild_period updates
            build: Build the division and sparsifiers now (a scheduler may defer this)

        Raises:
            DivisionError: If r is below the minimum region size
        """
        min_region_size = config.MIN_REGION_SIZE if min_region_size is None else min_region_size
        if r < min_region_size:
            raise DivisionError(f"Region size bound r={r} is below the minimum {min_region_size}")
        self.graph = graph.copy() if graph.mode is self.mode else graph.with_mode(self.mode)
        self.r = int(r)
        self.seed = config.DEFAULT_SEED if seed is None else int(seed)
        self.separator = separator
        self.audit = audit
        self.auto_rebuild = auto_rebuild
        c_t = config.REBUILD_CONSTANT if rebuild_constant is None else rebuild_constant
        self.rebuild_period = max(1, math.ceil(c_t * self.graph.num_vertices / self.r))

        self.division: Optional[RDivision] = None
        self.sparsifiers: Dict[int, RegionSparsifier] = {}
        self.ops_since_rebuild = 0
        self.stats = StructureStats()
        if build:
            self.rebuild()

    def __repr__(self) -> str:
        regions = self.division.region_count if self.division is not None else 0
        return f"{type(self).__name__}(n={self.graph.num_vertices}, r={self.r}, regions={regions})"

    # ------------------------------------------------------------------
    # Per-structure hooks
    # ------------------------------------------------------------------

    @abstractmethod
    def sparsify_region(self, region_graph: WeightedGraph, terminals: FrozenSet[int], seed: int) -> RegionSparsifier:
        """
        Build the sparsifier of one region.

        Args:
            region_graph: Region edges on the full id space
            terminals: Boundary vertices of the region (non-empty)
            seed: Seed derived for this region

        Returns:
            RegionSparsifier whose graph is in the structure's mode
        """
        pass

    @abstractmethod
    def evaluate(self, query_graph: WeightedGraph, s: int, t: int) -> float:
        """
        Answer a query on the assembled graph.

        Args:
            query_graph: Union of the endpoint regions and all other sparsifiers
            s: Source vertex
            t: Target vertex

        Returns:
            Query answer
        """
        pass

    # ------------------------------------------------------------------
    # Lifecycle
    # ------------------------------------------------------------------

    @property
    def is_built(self) -> bool:
        return self.division is not None

    def build_region(self, region_id: int) -> RegionSparsifier:
        region = self.division.region(region_id)
        terminals = frozenset(region.boundary)
        self.stats.sparsifier_builds += 1
        if not terminals:
            return RegionSparsifier(region_id, terminals, WeightedGraph(self.graph.num_vertices, self.mode))
        region_graph = self.division.region_graph(self.graph, region_id)
        sparsifier = self.sparsify_region(region_graph, terminals, derive_seed(self.seed, region_id))
        sparsifier.region_id = region_id
        return sparsifier

    def iter_build(self) -> Iterator[int]:
        """Resumable build job: the division build's units, then one unit per region sparsifier."""
        self.division = None
        self.sparsifiers = {}
        work = 0
        job = iter_rdivision(self.graph, self.r, separator=self.separator, seed=self.seed)
        while True:
            try:
                unit = next(job)
            except StopIteration as done:
                division = done.value
                break
            work += unit
            yield unit

        sparsifiers: Dict[int, RegionSparsifier] = {}
        self.division = division
        region_ids = list(division.region_ids())
        for region_id in region_ids[:-1]:
            sparsifiers[region_id] = self.build_region(region_id)
            work += 1
            yield 1
        for region_id in region_ids[-1:]:
            sparsifiers[region_id] = self.build_region(region_id)

        # the last unit is yielded only once the structure is complete
        self.sparsifiers = sparsifiers
        self.ops_since_rebuild = 0
        self.stats.rebuilds += 1
        self.stats.last_build_work = work + 1
        logger.info(
            "%s built: %d regions, %d boundary entries, %d sparsifier edges",
            type(self).__name__,
            self.division.region_count,
            self.division.total_boundary,
            sum(s.graph.num_edges for s in self.sparsifiers.values()),
        )
        yield 1

    def iter_teardown(self) -> Iterator[int]:
        """Resumable teardown job: one unit per discarded sparsifier, one for the division."""
        for region_id in list(self.sparsifiers):
            del self.sparsifiers[region_id]
            yield 1
        self.division = None
        yield 1

    def rebuild(self) -> None:
        for _ in self.iter_build():
            pass

    def apply_update(self, action: UpdateAction) -> ChangeRecord:
        """
        Apply one insertion or deletion and refresh the affected regions.

        Args:
            action: InsertEdge, DeleteEdge or DeleteBetween

        Returns:
            ChangeRecord of the graph mutation

        Raises:
            GraphError: If the action references an unknown vertex or edge
            InvariantViolation: In audit mode, if planarity or a division check breaks
        """
        if not self.is_built:
            raise DivisionError(f"{type(self).__name__} has not been built")
        action = resolve_action(self.graph, action)
        if self.audit and isinstance(action, InsertEdge) and not planarity_check(self.graph, action):
            raise InvariantViolation(f"Inserting ({action.u}, {action.v}) makes the graph non-planar")

        change = self.graph.mutate_edge(action)
        affected = division_update(self.division, self.graph, change)
        builds = 0
        for region_id in sorted(affected):
            if region_id in self.division.regions:
                self.sparsifiers[region_id] = self.build_region(region_id)
                builds += 1
            else:
                self.sparsifiers.pop(region_id, None)

        self.ops_since_rebuild += 1
        self.stats.updates += 1
        self.stats.last_update_builds = builds
        logger.debug("Update %s rebuilt %d region sparsifiers", change.kind, builds)

        if self.audit:
            report = validate_rdivision(self.division, self.graph)
            if report.hard_failures():
                names = ", ".join(check.name for check in report.hard_failures())
                raise InvariantViolation(f"Division invariant broken after update: {names}")

        if self.auto_rebuild and self.ops_since_rebuild >= self.rebuild_period:
            logger.info("%s reached %d updates; rebuilding", type(self).__name__, self.ops_since_rebuild)
            self.rebuild()
        return change

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def _check_endpoints(self, s: int, t: int) -> None:
        try:
            self.graph.check_vertex(s)
            self.graph.check_vertex(t)
        except GraphError as e:
            raise QueryError(str(e)) from None
        if s == t:
            raise QueryError(f"Query endpoints must differ, got s = t = {s}")

    def assemble(self, full_regions: Set[int]) -> WeightedGraph:
        """Union of the given regions with the sparsifiers of all others."""
        parts = [self.division.region_graph(self.graph, region_id) for region_id in sorted(full_regions)]
        parts += [
            sparsifier.graph
            for region_id, sparsifier in sorted(self.sparsifiers.items())
            if region_id not in full_regions
        ]
        return graph_union(parts, num_vertices=self.graph.num_vertices, mode=self.mode)

    def query(self, s: int, t: int) -> float:
        """
        Answer a query between two distinct vertices.

        Raises:
            QueryError: On unknown or equal endpoints
        """
        if not self.is_built:
            raise DivisionError(f"{type(self).__name__} has not been built")
        self._check_endpoints(s, t)
        self.stats.queries += 1
        home_s, home_t = self.division.home_region(s), self.division.home_region(t)
        if home_s is None or home_t is None:
            self.stats.last_query_vertices = 0
            self.stats.last_query_edges = 0
            return self.unreachable_value

        query_graph = self.assemble({home_s, home_t})
        self.stats.last_query_vertices = len(query_graph.vertices_with_edges())
        self.stats.last_query_edges = query_graph.num_edges
        logger.debug("Query (%d, %d) on an assembled graph with %d edges", s, t, query_graph.num_edges)
        return self.evaluate(query_graph, s, t)

    def division_report(self) -> DivisionReport:
        return validate_rdivision(self.division, self.graph)
