"""
Terminal cut sparsifiers: strategies, terminal cut profiles and the quality auditor.

A cut sparsifier H of G on terminals K has quality q when for every
non-empty proper S of K: mincut_G(S, K-S) <= mincut_H(S, K-S) <= q * mincut_G(S, K-S).
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, Optional, Union

from config import config
from src.errors import CutSparsifierError, GraphError
from src.graph.weighted_graph import GraphMode, WeightedGraph
from src.solvers.maxflow import terminal_cut_value

logger = logging.getLogger(__name__)

Adjacency = Dict[int, Dict[int, float]]


@dataclass
class CutSparsifier:
    """Capacity graph containing the terminals, with its declared quality."""

    terminals: FrozenSet[int]
    graph: WeightedGraph
    quality: float = 1.0
    strategy: str = "identity"


CutStrategy = Callable[[WeightedGraph, FrozenSet[int]], CutSparsifier]


def terminal_bipartitions(terminals: Iterable[int]) -> Iterator[FrozenSet[int]]:
    """Every S containing the smallest terminal, except K itself (2^(k-1) - 1 sets)."""
    ordered = sorted(set(terminals))
    if len(ordered) < 2:
        return
    first, rest = ordered[0], ordered[1:]
    for size in range(len(rest)):
        for combo in itertools.combinations(rest, size):
            yield frozenset((first,) + combo)


def cut_profile(graph: WeightedGraph, terminals: Iterable[int]) -> Dict[FrozenSet[int], float]:
    terminal_set = frozenset(terminals)
    return {side: terminal_cut_value(graph, terminal_set, side) for side in terminal_bipartitions(terminal_set)}


def _as_capacity(graph: WeightedGraph) -> WeightedGraph:
    if graph.mode is GraphMode.LENGTH:
        raise GraphError("Cut sparsifiers need a capacity- or conductance-mode graph, got length")
    return graph if graph.mode is GraphMode.CAPACITY else graph.with_mode(GraphMode.CAPACITY)


def _graph_from_adjacency(num_vertices: int, adjacency: Adjacency) -> WeightedGraph:
    graph = WeightedGraph(num_vertices, GraphMode.CAPACITY)
    for a in sorted(adjacency):
        for b in sorted(adjacency[a]):
            if a < b:
                graph.add_edge(a, b, adjacency[a][b])
    return graph


def _contract(adjacency: Adjacency, absorbed: int, keeper: int) -> None:
    """Merge ``absorbed`` into ``keeper``, summing parallel capacities."""
    for z, w in adjacency.pop(absorbed).items():
        del adjacency[z][absorbed]
        if z == keeper:
            continue
        adjacency[keeper][z] = adjacency[keeper].get(z, 0.0) + w
        adjacency[z][keeper] = adjacency[keeper][z]


def _safe_reductions(adjacency: Adjacency, terminals: FrozenSet[int]) -> int:
    """Drop pendant/isolated non-terminals and splice degree-2 ones; returns the count."""
    done = 0
    changed = True
    while changed:
        changed = False
        for v in sorted(adjacency):
            if v in terminals or v not in adjacency:
                continue
            star = adjacency[v]
            if len(star) <= 1:
                for z in star:
                    del adjacency[z][v]
                del adjacency[v]
            elif len(star) == 2:
                heavy = max(star, key=lambda z: (star[z], -z))
                _contract(adjacency, v, heavy)
            else:
                continue
            done += 1
            changed = True
    return done


def identity_strategy(graph: WeightedGraph, terminals: FrozenSet[int]) -> CutSparsifier:
    return CutSparsifier(terminals=frozenset(terminals), graph=_as_capacity(graph), quality=1.0, strategy="identity")


def contract_exact_strategy(
    graph: WeightedGraph,
    terminals: FrozenSet[int],
    max_terminals: Optional[int] = None,
) -> CutSparsifier:
    """
    Contract edges while every terminal cut value stays unchanged.

    Safe reductions run first; each remaining edge is then tried once and its
    contraction kept only if the full terminal cut profile is reproduced.
    Terminal endpoints keep their id when an edge is contracted.

    Args:
        graph: Capacity-mode graph
        terminals: Terminal set K
        max_terminals: Largest |K| handled (default config.CUT_MAX_TERMINALS)

    Returns:
        CutSparsifier of quality 1 (identity when |K| exceeds the limit)
    """
    max_terminals = config.CUT_MAX_TERMINALS if max_terminals is None else max_terminals
    terminals = frozenset(terminals)
    graph = _as_capacity(graph)
    if len(terminals) > max_terminals:
        logger.warning(
            "contract-exact supports at most %d terminals, got %d; using identity", max_terminals, len(terminals)
        )
        return identity_strategy(graph, terminals)

    adjacency = graph.merged_adjacency()
    for component in graph.components(sorted(adjacency)):
        if not terminals.intersection(component):
            for a in component:
                del adjacency[a]
    _safe_reductions(adjacency, terminals)

    baseline = cut_profile(graph, terminals)
    candidates = sorted((a, b) for a in adjacency for b in adjacency[a] if a < b and not (a in terminals and b in terminals))
    contracted = 0
    for a, b in candidates:
        if a not in adjacency or b not in adjacency.get(a, {}):
            continue
        absorbed, keeper = (a, b) if a not in terminals else (b, a)
        trial = {x: dict(nbrs) for x, nbrs in adjacency.items()}
        _contract(trial, absorbed, keeper)
        trial_graph = _graph_from_adjacency(graph.num_vertices, trial)
        profile = cut_profile(trial_graph, terminals)
        if all(math.isclose(profile[s], baseline[s], rel_tol=config.TOLERANCE, abs_tol=config.TOLERANCE) for s in baseline):
            adjacency = trial
            contracted += 1
    _safe_reductions(adjacency, terminals)

    result = _graph_from_adjacency(graph.num_vertices, adjacency)
    logger.debug("contract-exact: %d -> %d merged edges, %d verified contractions", len(graph.merged_weights()), result.num_edges, contracted)
    return CutSparsifier(terminals=terminals, graph=result, quality=1.0, strategy="contract-exact")


CUT_STRATEGIES: Dict[str, CutStrategy] = {
    "identity": identity_strategy,
    "contract-exact": contract_exact_strategy,
}


def cut_sparsify(
    graph: WeightedGraph,
    terminals: Iterable[int],
    strategy: Union[str, CutStrategy, None] = None,
) -> CutSparsifier:
    """Build a terminal cut sparsifier with a named or injected strategy."""
    terminals = frozenset(int(k) for k in terminals)
    for k in terminals:
        graph.check_vertex(k)
    strategy = config.CUT_STRATEGY if strategy is None else strategy
    if isinstance(strategy, str):
        if strategy not in CUT_STRATEGIES:
            raise GraphError(f"Unknown cut strategy '{strategy}'; choose from {sorted(CUT_STRATEGIES)}")
        strategy = CUT_STRATEGIES[strategy]
    sparsifier = strategy(graph, terminals)
    if not isinstance(sparsifier, CutSparsifier):
        raise GraphError(f"Cut strategy returned {type(sparsifier).__name__}, expected CutSparsifier")
    return sparsifier


def cut_quality_audit(
    graph: WeightedGraph,
    terminals: Iterable[int],
    sparsifier: Union[CutSparsifier, WeightedGraph],
) -> float:
    """
    Measure the quality of a cut sparsifier over all terminal bipartitions.

    Args:
        graph: Original capacity graph
        terminals: Terminal set (at most 10 terminals)
        sparsifier: Candidate sparsifier (or its graph)

    Returns:
        max over S of mincut_H(S) / mincut_G(S); 1.0 when fewer than two terminals

    Raises:
        CutSparsifierError: If some mincut_H(S) falls below mincut_G(S)
    """
    terminals = frozenset(terminals)
    if len(terminals) > 10:
        raise GraphError(f"Cut quality audit enumerates bipartitions of at most 10 terminals, got {len(terminals)}")
    h = sparsifier.graph if isinstance(sparsifier, CutSparsifier) else sparsifier

    quality = 1.0
    for side in terminal_bipartitions(terminals):
        g_value = terminal_cut_value(graph, terminals, side)
        h_value = terminal_cut_value(h, terminals, side)
        slack = config.TOLERANCE * max(1.0, g_value)
        if h_value < g_value - slack:
            raise CutSparsifierError(
                f"Sparsifier cut {h_value:.6g} below original {g_value:.6g} for terminal side {sorted(side)}"
            )
        if g_value <= slack:
            ratio = 1.0 if h_value <= slack else math.inf
        else:
            ratio = h_value / g_value
        quality = max(quality, ratio)
    return quality
