"""
Spectral sparsification by effective-resistance sampling, and an empirical checker.

Every sampled component is certified before it is kept: components up to
``SPECTRAL_EXACT_LIMIT`` vertices get the exact extreme generalized eigenvalues
of the two Laplacians, larger ones the probe-based ``verify_spectral`` bound.
A component that misses epsilon after ``SPECTRAL_MAX_ROUNDS`` draws is kept
exact in strict mode (the output then exceeds the budget) or keeps its best
draw with the measured epsilon on the certificate otherwise.
"""

import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg as la

from config import config
from src.data_models import SparsifierCertificate, SpectralReport
from src.errors import GraphError
from src.graph.weighted_graph import GraphMode, WeightedGraph
from src.solvers.resistance import edge_resistances

logger = logging.getLogger(__name__)

EdgeKey = Tuple[int, int]


def sample_budget(num_vertices: int, epsilon: float, delta: float, n_total: int, sample_constant: float) -> int:
    """q = ceil(C_s * k * eps^-2 * ln(n / delta))."""
    return int(math.ceil(sample_constant * num_vertices * epsilon ** -2 * math.log(max(n_total, 1) / delta)))


def _local_laplacian(edges: Dict[EdgeKey, float], position: Dict[int, int]) -> np.ndarray:
    size = len(position)
    lap = np.zeros((size, size))
    for (a, b), w in edges.items():
        i, j = position[a], position[b]
        lap[i, i] += w
        lap[j, j] += w
        lap[i, j] -= w
        lap[j, i] -= w
    return lap


def measured_epsilon(
    reference: Dict[EdgeKey, float],
    candidate: Dict[EdgeKey, float],
    vertices: List[int],
    num_vertices: int,
    seed: int = 0,
) -> float:
    """
    Smallest eps with (1-eps) L_ref <= L_cand <= (1+eps) L_ref on one connected component.

    Exact through the generalized eigenvalues of the pencil shifted by the
    all-ones projection for up to ``SPECTRAL_EXACT_LIMIT`` vertices, and the
    ``verify_spectral`` ratio extremes above that.
    """
    if len(vertices) <= config.SPECTRAL_EXACT_LIMIT:
        position = {v: i for i, v in enumerate(vertices)}
        shift = np.full((len(vertices), len(vertices)), 1.0 / len(vertices))
        values = la.eigh(
            _local_laplacian(candidate, position) + shift,
            _local_laplacian(reference, position) + shift,
            eigvals_only=True,
        )
        return float(max(1.0 - values.min(), values.max() - 1.0, 0.0))

    ref = WeightedGraph.from_edges(num_vertices, [(a, b, w) for (a, b), w in reference.items()])
    cand = WeightedGraph.from_edges(num_vertices, [(a, b, w) for (a, b), w in candidate.items()])
    report = verify_spectral(ref, cand, 0.0, trials=config.SPECTRAL_VERIFY_TRIALS, seed=seed)
    return float(max(1.0 - report.min_ratio, report.max_ratio - 1.0, 0.0))


def _draw(
    keys: List[EdgeKey], weights: np.ndarray, p: np.ndarray, share: int, rng: np.random.Generator
) -> Dict[EdgeKey, float]:
    picks = rng.choice(len(keys), size=share, replace=True, p=p)
    counts = np.bincount(picks, minlength=len(keys))
    return {keys[i]: float(weights[i] * counts[i] / (share * p[i])) for i in np.flatnonzero(counts)}


def sparsify_spectral(
    graph: WeightedGraph,
    epsilon: float,
    delta: float,
    seed: int,
    n_total: Optional[int] = None,
    num_terminals: Optional[int] = None,
    sample_constant: Optional[float] = None,
    strict: Optional[bool] = None,
    max_rounds: Optional[int] = None,
) -> Tuple[WeightedGraph, SparsifierCertificate]:
    """
    Sample edges with probability proportional to w(e) R(e), reweight and certify.

    A component whose merged edge count already fits its share of the budget
    is copied unchanged, so trees and small graphs come back exactly.

    Args:
        graph: Conductance-mode graph
        epsilon: Approximation parameter in (0, 1/2)
        delta: Failure probability in (0, 1)
        seed: Seed for the sampler
        n_total: n in ln(n/delta) (default: vertices carrying edges)
        num_terminals: Vertex count k in the budget (default: vertices carrying edges)
        sample_constant: C_s (default from config)
        strict: Keep a component exact when no draw meets epsilon (default from config)
        max_rounds: Draws per component before giving up (default from config)

    Returns:
        Tuple of (merged sparsifier on the same id space, certificate)
    """
    if graph.mode is not GraphMode.CONDUCTANCE:
        raise GraphError(f"Spectral sparsification needs a conductance-mode graph, got {graph.mode.value}")
    if not 0.0 < epsilon < 0.5:
        raise GraphError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    if not 0.0 < delta < 1.0:
        raise GraphError(f"delta must lie in (0, 1), got {delta}")
    sample_constant = config.SAMPLING_CONSTANT if sample_constant is None else sample_constant
    strict = config.SPECTRAL_STRICT if strict is None else strict
    max_rounds = config.SPECTRAL_MAX_ROUNDS if max_rounds is None else max_rounds
    if max_rounds < 1:
        raise GraphError(f"max_rounds must be at least 1, got {max_rounds}")

    active = graph.vertices_with_edges()
    n_g = len(active) if num_terminals is None else max(num_terminals, len(active))
    n = max(len(active), 1) if n_total is None else n_total
    q = sample_budget(n_g, epsilon, delta, n, sample_constant)

    merged = graph.merged_weights()
    result = WeightedGraph(graph.num_vertices, GraphMode.CONDUCTANCE)
    compressed = False
    worst = 0.0
    rounds_used = 0

    if len(merged) <= q:
        for (a, b), w in sorted(merged.items()):
            result.add_edge(a, b, w)
    else:
        rng = np.random.default_rng(seed)
        for component in graph.components(active):
            members = set(component)
            keys = sorted(key for key in merged if key[0] in members)
            share = max(1, int(math.floor(q * len(component) / max(n_g, 1))))
            if len(keys) <= share:
                for a, b in keys:
                    result.add_edge(a, b, merged[(a, b)])
                continue

            reference = {key: merged[key] for key in keys}
            piece = WeightedGraph.from_edges(graph.num_vertices, [(a, b, w) for (a, b), w in reference.items()])
            resistances = edge_resistances(piece)
            weights = np.array([merged[key] for key in keys])
            scores = weights * np.array([resistances[key] for key in keys])
            p = scores / scores.sum()

            best: Optional[Dict[EdgeKey, float]] = None
            best_eps = math.inf
            for round_index in range(1, max_rounds + 1):
                sample = _draw(keys, weights, p, share, rng)
                eps = measured_epsilon(reference, sample, sorted(component), graph.num_vertices, seed=seed + round_index)
                rounds_used = max(rounds_used, round_index)
                if eps < best_eps:
                    best, best_eps = sample, eps
                if eps <= epsilon:
                    break

            if best_eps > epsilon and strict:
                logger.warning(
                    "Sampled component of %d vertices reached eps=%.3f > %.3f after %d rounds; keeping it exact",
                    len(component), best_eps, epsilon, max_rounds,
                )
                best, best_eps = reference, 0.0
            else:
                compressed = True
                if best_eps > epsilon:
                    logger.warning("Sampled component of %d vertices only reached eps=%.3f > %.3f",
                                   len(component), best_eps, epsilon)
            worst = max(worst, best_eps)
            for (a, b), w in sorted(best.items()):
                result.add_edge(a, b, w)

    logger.debug("Spectral sparsifier: %d -> %d merged edges (budget %d, eps %.3f)",
                 len(merged), result.num_edges, q, worst)
    certificate = SparsifierCertificate(
        epsilon=epsilon,
        delta=delta,
        sample_count=q,
        sample_constant=sample_constant,
        seed=seed,
        compressed=compressed,
        output_edges=result.num_edges,
        measured_epsilon=worst,
        rounds=rounds_used,
        within_budget=result.num_edges <= q,
        within_epsilon=worst <= epsilon,
    )
    return result, certificate


def verify_spectral(
    a: WeightedGraph,
    b: WeightedGraph,
    epsilon: float,
    trials: int = 100,
    seed: int = 0,
) -> SpectralReport:
    """
    Compare the quadratic forms of two graphs on random and edge-indicator vectors.

    Args:
        a: Reference graph
        b: Candidate approximation on the same id space
        epsilon: Allowed relative deviation
        trials: Number of Gaussian probe vectors
        seed: Seed for the probes

    Returns:
        SpectralReport with ratio extremes and the pass/fail verdict
    """
    if a.num_vertices != b.num_vertices:
        raise GraphError(f"Graphs must share an id space ({a.num_vertices} vs {b.num_vertices} vertices)")
    n = a.num_vertices
    view_a, view_b = a.laplacian(), b.laplacian()

    rng = np.random.default_rng(seed)
    probes = [rng.standard_normal(n) for _ in range(trials)]
    for u, v in sorted(a.merged_weights()):
        x = np.zeros(n)
        x[u], x[v] = 1.0, -1.0
        probes.append(x)

    ratios = []
    for x in probes:
        qa, qb = view_a.quadratic_form(x), view_b.quadratic_form(x)
        if qa <= config.TOLERANCE * max(1.0, float(np.dot(x, x))):
            if qb <= config.TOLERANCE * max(1.0, float(np.dot(x, x))):
                continue
            ratios.append(math.inf)
        else:
            ratios.append(qb / qa)

    if not ratios:
        ratios = [1.0]
    low, high = min(ratios), max(ratios)
    worst = low if (1.0 - low) > (high - 1.0) else high
    slack = config.TOLERANCE
    passed = (1.0 - epsilon - slack) <= low and high <= (1.0 + epsilon + slack)
    return SpectralReport(
        epsilon=epsilon,
        trials=trials,
        probes=len(probes),
        min_ratio=low,
        max_ratio=high,
        worst_ratio=worst,
        passed=passed,
    )
