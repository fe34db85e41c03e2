"""
Weak r-divisions: recursive construction, validation and incremental maintenance.

A division partitions the edge set into regions of at most ``r`` vertices. A
vertex is a boundary vertex of every region containing it as soon as it lies
in two or more regions.
"""

import logging
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Dict, Generator, Iterable, List, Optional, Set, Union

from config import config
from src.data_models import DivisionCheck, DivisionReport
from src.errors import DivisionError, InvariantViolation, SeparatorError
from src.graph.weighted_graph import ChangeRecord, Edge, WeightedGraph
from src.partition.base_separator import BaseSeparator
from src.partition.separators import BFSBisectionSeparator, get_separator

logger = logging.getLogger(__name__)


@dataclass
class Region:
    """One piece of the division: an edge set, its vertices and its boundary."""

    region_id: int
    edges: Set[int] = field(default_factory=set)
    vertex_counts: Counter = field(default_factory=Counter)
    boundary: Set[int] = field(default_factory=set)

    @property
    def vertices(self) -> Set[int]:
        return set(self.vertex_counts)

    @property
    def size(self) -> int:
        return len(self.vertex_counts)

    def add_edge(self, edge: Edge) -> None:
        self.edges.add(edge.edge_id)
        self.vertex_counts[edge.u] += 1
        self.vertex_counts[edge.v] += 1

    def remove_edge(self, edge: Edge) -> List[int]:
        """Remove an edge; returns the endpoints that left the region."""
        self.edges.discard(edge.edge_id)
        left = []
        for z in (edge.u, edge.v):
            self.vertex_counts[z] -= 1
            if self.vertex_counts[z] <= 0:
                del self.vertex_counts[z]
                left.append(z)
        return left

    def interior(self) -> Set[int]:
        return self.vertices - self.boundary


class RDivision:
    """Edge partition into regions plus per-vertex region membership."""

    def __init__(self, num_vertices: int, r: int, c1: Optional[float] = None, c2: Optional[float] = None):
        self.num_vertices = num_vertices
        self.r = r
        self.c1 = config.DIVISION_C1 if c1 is None else c1
        self.c2 = config.DIVISION_C2 if c2 is None else c2
        self.regions: Dict[int, Region] = {}
        self.vertex_regions: List[Set[int]] = [set() for _ in range(num_vertices)]
        self.edge_region: Dict[int, int] = {}
        self.next_region_id = 0
        self.updates_since_rebuild = 0

    def __repr__(self) -> str:
        return f"RDivision(r={self.r}, regions={self.region_count}, total_boundary={self.total_boundary})"

    @property
    def region_count(self) -> int:
        return len(self.regions)

    @property
    def total_boundary(self) -> int:
        return sum(len(region.boundary) for region in self.regions.values())

    def boundary_vertices(self) -> Set[int]:
        return {v for region in self.regions.values() for v in region.boundary}

    def region(self, region_id: int) -> Region:
        try:
            return self.regions[region_id]
        except KeyError:
            raise DivisionError(f"Unknown region {region_id}") from None

    def region_ids(self) -> List[int]:
        return sorted(self.regions)

    def regions_of(self, v: int) -> Set[int]:
        return set(self.vertex_regions[v])

    def home_region(self, v: int) -> Optional[int]:
        """Lowest-id region containing ``v``; None for vertices in no region."""
        regions = self.vertex_regions[v]
        return min(regions) if regions else None

    def region_graph(self, graph: WeightedGraph, region_id: int) -> WeightedGraph:
        return graph.subgraph_from_edges(sorted(self.region(region_id).edges))

    def add_region(self, edges: Iterable[Edge]) -> Region:
        """Register a new region; boundary bookkeeping is left to the caller."""
        region = Region(region_id=self.next_region_id)
        self.next_region_id += 1
        for edge in edges:
            if edge.edge_id in self.edge_region:
                raise DivisionError(f"Edge {edge.edge_id} already belongs to region {self.edge_region[edge.edge_id]}")
            region.add_edge(edge)
            self.edge_region[edge.edge_id] = region.region_id
        for v in region.vertex_counts:
            self.vertex_regions[v].add(region.region_id)
        self.regions[region.region_id] = region
        return region

    def recompute_boundary(self, region_id: int) -> Set[int]:
        region = self.region(region_id)
        return {v for v in region.vertex_counts if len(self.vertex_regions[v]) >= 2}

    def refresh_boundaries(self) -> None:
        for region_id in self.regions:
            self.regions[region_id].boundary = self.recompute_boundary(region_id)


def _piece_adjacency(graph: WeightedGraph, edge_ids: Iterable[int]) -> Dict[int, Set[int]]:
    adjacency: Dict[int, Set[int]] = {}
    for edge_id in edge_ids:
        edge = graph.edge(edge_id)
        adjacency.setdefault(edge.u, set()).add(edge.v)
        adjacency.setdefault(edge.v, set()).add(edge.u)
    return adjacency


def _split_by_components(graph: WeightedGraph, edge_ids: Set[int]) -> List[Set[int]]:
    adjacency = _piece_adjacency(graph, edge_ids)
    label: Dict[int, int] = {}
    for v in sorted(adjacency):
        if v in label:
            continue
        label[v] = v
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y not in label:
                    label[y] = v
                    queue.append(y)
    groups: Dict[int, Set[int]] = {}
    for edge_id in edge_ids:
        groups.setdefault(label[graph.edge(edge_id).u], set()).add(edge_id)
    return [groups[key] for key in sorted(groups)]


def _split_by_separator(graph: WeightedGraph, edge_ids: Set[int], separator: Set[int]) -> List[Set[int]]:
    """One piece per component of the piece minus S, plus the S-internal edges."""
    adjacency = _piece_adjacency(graph, edge_ids)
    label: Dict[int, int] = {}
    for v in sorted(adjacency):
        if v in separator or v in label:
            continue
        label[v] = v
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y not in separator and y not in label:
                    label[y] = v
                    queue.append(y)

    groups: Dict[int, Set[int]] = {}
    internal: Set[int] = set()
    for edge_id in edge_ids:
        edge = graph.edge(edge_id)
        anchor = edge.u if edge.u not in separator else edge.v
        if anchor in separator:
            internal.add(edge_id)
        else:
            groups.setdefault(label[anchor], set()).add(edge_id)
    pieces = [groups[key] for key in sorted(groups)]
    if internal:
        pieces.append(internal)
    return pieces


def _block_chunks(graph: WeightedGraph, edge_ids: Set[int], r: int) -> List[Set[int]]:
    """Last-resort split: BFS-order blocks of r // 2 vertices, one piece per block pair."""
    adjacency = _piece_adjacency(graph, edge_ids)
    order: List[int] = []
    seen: Set[int] = set()
    for v in sorted(adjacency):
        if v in seen:
            continue
        seen.add(v)
        queue = deque([v])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(adjacency[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)

    block_size = max(1, r // 2)
    block = {v: i // block_size for i, v in enumerate(order)}
    groups: Dict[tuple, Set[int]] = {}
    for edge_id in edge_ids:
        edge = graph.edge(edge_id)
        key = tuple(sorted((block[edge.u], block[edge.v])))
        groups.setdefault(key, set()).add(edge_id)
    return [groups[key] for key in sorted(groups)]


def _piece_vertices(graph: WeightedGraph, edge_ids: Iterable[int]) -> Set[int]:
    vertices: Set[int] = set()
    for edge_id in edge_ids:
        edge = graph.edge(edge_id)
        vertices.add(edge.u)
        vertices.add(edge.v)
    return vertices


def _merge_small_pieces(graph: WeightedGraph, pieces: List[Set[int]], r: int) -> List[Set[int]]:
    """Join pieces sharing a vertex while the union stays within r vertices."""
    vertices = [_piece_vertices(graph, piece) for piece in pieces]
    alive = [True] * len(pieces)
    owners: Dict[int, Set[int]] = {}
    for i, vs in enumerate(vertices):
        for v in vs:
            owners.setdefault(v, set()).add(i)

    for i in range(len(pieces)):
        if not alive[i]:
            continue
        changed = True
        while changed:
            changed = False
            neighbors = sorted({j for v in vertices[i] for j in owners[v] if j != i and alive[j]})
            for j in neighbors:
                if len(vertices[i] | vertices[j]) <= r:
                    pieces[i] |= pieces[j]
                    for v in vertices[j]:
                        owners[v].discard(j)
                        owners[v].add(i)
                    vertices[i] |= vertices[j]
                    alive[j] = False
                    changed = True
    return [pieces[i] for i in range(len(pieces)) if alive[i]]


def iter_rdivision(
    graph: WeightedGraph,
    r: int,
    separator: Union[str, BaseSeparator, None] = None,
    seed: Optional[int] = None,
    c1: Optional[float] = None,
    c2: Optional[float] = None,
) -> Generator[int, None, RDivision]:
    """
    Resumable r-division construction.

    Yields one work unit per processed piece (finished, split into components,
    split by a separator or chunked), one for the merge pass, one per region
    assembled and one for the final validation. The generator's return value
    is the division; drive it with ``yield from`` or ``build_rdivision``.

    Raises:
        DivisionError: If r is below 2
        InvariantViolation: If the constructed division fails a hard check
    """
    if r < 2:
        raise DivisionError(f"Region size bound r must be at least 2, got {r}")
    seed = config.DEFAULT_SEED if seed is None else seed
    strategy = get_separator(separator, seed)
    bisection = BFSBisectionSeparator(seed=seed)

    finished: List[Set[int]] = []
    stack = _split_by_components(graph, set(graph.edge_ids()))
    stack.reverse()
    yield 1
    while stack:
        piece = stack.pop()
        piece_vertices = _piece_vertices(graph, piece)
        if len(piece_vertices) <= r:
            finished.append(piece)
            yield 1
            continue

        components = _split_by_components(graph, piece)
        if len(components) > 1:
            stack.extend(reversed(components))
            yield 1
            continue

        adjacency = _piece_adjacency(graph, piece)
        children: Optional[List[Set[int]]] = None
        for candidate in (strategy, bisection):
            try:
                result = candidate.find(adjacency)
            except SeparatorError as e:
                logger.warning("Separator %s failed on a %d-vertex piece: %s", candidate.name, len(piece_vertices), e)
                continue
            if not candidate.is_valid(adjacency, result):
                logger.warning("Separator %s returned an unbalanced split on %d vertices", candidate.name, len(piece_vertices))
                continue
            split = _split_by_separator(graph, piece, result.separator)
            if all(len(_piece_vertices(graph, p)) < len(piece_vertices) for p in split):
                children = split
                break

        if children is None:
            logger.warning("No separator made progress on a %d-vertex piece; using block chunking", len(piece_vertices))
            finished.extend(_block_chunks(graph, piece, r))
        else:
            stack.extend(reversed(children))
        yield 1

    finished = _merge_small_pieces(graph, finished, r)
    yield 1

    division = RDivision(graph.num_vertices, r, c1=c1, c2=c2)
    for piece in finished:
        division.add_region(graph.edge(edge_id) for edge_id in sorted(piece))
        yield 1
    division.refresh_boundaries()

    report = validate_rdivision(division, graph)
    if report.hard_failures():
        names = ", ".join(check.name for check in report.hard_failures())
        raise InvariantViolation(f"Constructed r-division fails checks: {names}")
    for check in report.failed():
        logger.warning("r-division bound exceeded: %s (%s > %s)", check.name, check.measured, check.bound)
    logger.info(
        "Built r-division: r=%d, %d regions, total boundary %d, %d boundary vertices",
        r, division.region_count, division.total_boundary, report.boundary_vertices,
    )
    yield 1
    return division


def build_rdivision(
    graph: WeightedGraph,
    r: int,
    separator: Union[str, BaseSeparator, None] = None,
    seed: Optional[int] = None,
    c1: Optional[float] = None,
    c2: Optional[float] = None,
) -> RDivision:
    """
    Build a weak r-division by recursive separation.

    Args:
        graph: Graph to divide
        r: Maximum number of vertices per region (at least 2)
        separator: Strategy name or instance (default BFS-level)
        seed: Seed for the separator strategy
        c1: Region-count constant (default from config)
        c2: Boundary-count constant (default from config)

    Returns:
        RDivision whose regions partition the edge set

    Raises:
        DivisionError: If r is below 2
        InvariantViolation: If the constructed division fails a hard check
    """
    job = iter_rdivision(graph, r, separator=separator, seed=seed, c1=c1, c2=c2)
    while True:
        try:
            next(job)
        except StopIteration as done:
            return done.value


def validate_rdivision(division: RDivision, graph: WeightedGraph) -> DivisionReport:
    """
    Recompute the division invariants from scratch.

    Edge-partition exactness, the region size bound and boundary consistency
    are hard checks; the region-count and total-boundary bounds are reported
    with the configured constants but do not invalidate the division.

    Args:
        division: Division to check
        graph: Graph the division claims to partition

    Returns:
        DivisionReport with one entry per check
    """
    n = graph.num_vertices
    r = division.r
    updates = division.updates_since_rebuild

    owners: Counter = Counter()
    membership: Dict[int, Set[int]] = {}
    for region_id, region in division.regions.items():
        for edge_id in region.edges:
            owners[edge_id] += 1
            if graph.has_edge(edge_id):
                edge = graph.edge(edge_id)
                membership.setdefault(edge.u, set()).add(region_id)
                membership.setdefault(edge.v, set()).add(region_id)
    graph_ids = set(graph.edge_ids())
    unassigned = [e for e in graph_ids if owners[e] == 0]
    duplicated = [e for e, count in owners.items() if count > 1]
    unknown = [e for e in owners if e not in graph_ids]
    bad_edges = len(unassigned) + len(duplicated) + len(unknown)

    sizes = {}
    mismatched = []
    for region_id, region in division.regions.items():
        vertices = {v for v, regions in membership.items() if region_id in regions}
        sizes[region_id] = len(vertices)
        recomputed = {v for v in vertices if len(membership[v]) >= 2}
        if recomputed != region.boundary:
            mismatched.append(region_id)

    max_size = max(sizes.values(), default=0)
    total_boundary = division.total_boundary
    boundary_vertices = len(division.boundary_vertices())
    region_count = division.region_count
    region_bound = division.c1 * n / r + updates
    # an update adds at most its two endpoints to the boundary
    boundary_bound = division.c2 * n / math.sqrt(r) + 2 * updates

    checks = [
        DivisionCheck(
            name="edge_partition",
            passed=bad_edges == 0,
            measured=bad_edges,
            bound=0,
            detail=f"{len(unassigned)} unassigned, {len(duplicated)} in several regions, {len(unknown)} unknown",
        ),
        DivisionCheck(name="region_size", passed=max_size <= r, measured=max_size, bound=r,
                      detail="largest region vertex count"),
        DivisionCheck(
            name="boundary_consistency",
            passed=not mismatched,
            measured=len(mismatched),
            bound=0,
            detail=f"regions with stale boundary: {sorted(mismatched)[:10]}",
        ),
        DivisionCheck(name="region_count", passed=region_count <= region_bound, measured=region_count,
                      bound=region_bound, detail="c1*n/r + updates", hard=False),
        DivisionCheck(name="boundary_vertices", passed=boundary_vertices <= boundary_bound, measured=boundary_vertices,
                      bound=boundary_bound, detail="distinct boundary vertices, c2*n/sqrt(r) + 2*updates", hard=False),
    ]

    return DivisionReport(
        r=r,
        num_vertices=n,
        region_count=region_count,
        total_boundary=total_boundary,
        boundary_vertices=boundary_vertices,
        max_region_size=max_size,
        max_region_boundary=max((len(region.boundary) for region in division.regions.values()), default=0),
        updates_since_rebuild=updates,
        checks=checks,
    )


def division_update(division: RDivision, graph: WeightedGraph, change: ChangeRecord) -> Set[int]:
    """
    Apply one edge change to the division.

    Args:
        division: Division to update in place
        graph: Graph after the change
        change: Record returned by ``mutate_edge``

    Returns:
        Ids of every region whose edge set or boundary changed (discarded regions included)

    Raises:
        DivisionError: If the change references an edge the division does not track
    """
    edge = change.edge
    affected: Set[int] = set()

    if change.is_insert:
        if edge.edge_id in division.edge_region:
            raise DivisionError(f"Edge {edge.edge_id} is already tracked by region {division.edge_region[edge.edge_id]}")
        common = division.vertex_regions[edge.u] & division.vertex_regions[edge.v]
        if common:
            target = division.regions[min(common)]
            target.add_edge(edge)
            division.edge_region[edge.edge_id] = target.region_id
            affected.add(target.region_id)
        else:
            # endpoints in exactly one region become boundary vertices there
            for z in (edge.u, edge.v):
                if len(division.vertex_regions[z]) == 1:
                    (only,) = division.vertex_regions[z]
                    division.regions[only].boundary.add(z)
                    affected.add(only)
            region = division.add_region([edge])
            region.boundary = {z for z in (edge.u, edge.v) if len(division.vertex_regions[z]) >= 2}
            affected.add(region.region_id)
    else:
        region_id = division.edge_region.pop(edge.edge_id, None)
        if region_id is None:
            raise DivisionError(f"Edge {edge.edge_id} is not tracked by the division")
        region = division.regions[region_id]
        affected.add(region_id)
        for z in region.remove_edge(edge):
            division.vertex_regions[z].discard(region_id)
            region.boundary.discard(z)
            if len(division.vertex_regions[z]) == 1:
                (only,) = division.vertex_regions[z]
                division.regions[only].boundary.discard(z)
                affected.add(only)
        if not region.edges:
            del division.regions[region_id]
            logger.debug("Discarded empty region %d", region_id)

    division.updates_since_rebuild += 1
    logger.debug("Division update on edge %d affected regions %s", edge.edge_id, sorted(affected))
    return affected
