"""
Exact electrical computations: potentials, effective resistances and electrical flows.

Systems are solved per connected component on a compacted Laplacian with one
vertex grounded. Components up to ``config.DIRECT_SOLVER_LIMIT`` vertices use
a sparse direct factorization, larger ones diagonally preconditioned
conjugate gradient.
"""

import itertools
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from config import config
from src.errors import GraphError, InfeasibleDemandError, SolverError
from src.graph.vectors import Demand, Flow, Potential, flow_from_potentials, unit_demand
from src.graph.weighted_graph import WeightedGraph

logger = logging.getLogger(__name__)


def _component_laplacian(graph: WeightedGraph, vertices: Sequence[int]) -> Tuple[sp.csr_matrix, Dict[int, int]]:
    """Laplacian of the merged graph restricted to ``vertices`` (a union of components)."""
    index = {v: i for i, v in enumerate(vertices)}
    rows: List[int] = []
    cols: List[int] = []
    data: List[float] = []
    diag = np.zeros(len(vertices), dtype=np.float64)
    for v in vertices:
        for edge in graph.incident_edges(v):
            if edge.u != v:
                continue
            ia, ib, w = index[edge.u], index[edge.v], edge.weight
            rows += [ia, ib]
            cols += [ib, ia]
            data += [-w, -w]
            diag[ia] += w
            diag[ib] += w
    k = len(vertices)
    rows += list(range(k))
    cols += list(range(k))
    data += diag.tolist()
    return sp.csr_matrix((data, (rows, cols)), shape=(k, k)), index


def _solve_grounded(laplacian: sp.csr_matrix, rhs: np.ndarray, direct_limit: int, rtol: float) -> np.ndarray:
    """Solve L x = b on a connected component, grounding the last vertex."""
    k = laplacian.shape[0]
    x = np.zeros(k, dtype=np.float64)
    if k <= 1:
        return x

    reduced = laplacian[:-1, :-1].tocsc()
    b = rhs[:-1]
    if k <= direct_limit:
        x[:-1] = spla.spsolve(reduced, b)
    else:
        inv_diag = 1.0 / reduced.diagonal()
        preconditioner = spla.LinearOperator(reduced.shape, matvec=lambda y: inv_diag * y)
        solution, info = spla.cg(reduced, b, rtol=rtol, atol=0.0, M=preconditioner, maxiter=10 * k)
        if info != 0:
            raise SolverError(f"Conjugate gradient did not converge on a {k}-vertex component (info={info})")
        x[:-1] = solution

    if not np.all(np.isfinite(x)):
        raise SolverError(f"Non-finite potentials on a {k}-vertex component")
    return x


def solve_potentials(
    graph: WeightedGraph,
    demand: Demand,
    direct_limit: Optional[int] = None,
    rtol: Optional[float] = None,
) -> Potential:
    """Potentials phi with L phi = d, summing to zero on every component.

    Raises:
        InfeasibleDemandError: If the demand does not sum to zero on some component.
    """
    direct_limit = config.DIRECT_SOLVER_LIMIT if direct_limit is None else direct_limit
    rtol = config.SOLVER_RTOL if rtol is None else rtol

    d = np.asarray(demand, dtype=np.float64)
    if d.shape != (graph.num_vertices,):
        raise GraphError(f"Demand must have length {graph.num_vertices}, got shape {d.shape}")

    phi = np.zeros(graph.num_vertices, dtype=np.float64)
    scale = max(1.0, float(np.abs(d).sum()))
    seen = set()

    for v in np.flatnonzero(d):
        v = int(v)
        if v in seen:
            continue
        component = sorted(graph.component_of(v))
        seen.update(component)

        local_demand = d[component]
        imbalance = float(local_demand.sum())
        if abs(imbalance) > config.TOLERANCE * scale:
            raise InfeasibleDemandError(
                f"Demand sums to {imbalance:.3g} on the component of vertex {v}; "
                "demands must balance within every connected component"
            )
        if len(component) == 1:
            continue

        laplacian, _ = _component_laplacian(graph, component)
        x = _solve_grounded(laplacian, local_demand, direct_limit, rtol)
        x -= x.mean()

        residual = float(np.linalg.norm(laplacian @ x - local_demand))
        if residual > 10 * rtol * max(1.0, float(np.linalg.norm(local_demand))):
            logger.warning("Potential solve residual %.3g exceeds tolerance on %d vertices", residual, len(component))
        phi[component] = x

    return phi


def effective_resistance(graph: WeightedGraph, s: int, t: int) -> float:
    """R(s, t) = chi^T L^+ chi; +inf when s and t are disconnected."""
    graph.check_vertex(s)
    graph.check_vertex(t)
    if s == t:
        logger.info("Effective resistance queried with s = t = %d; returning 0", s)
        return 0.0

    component = graph.component_of(s)
    if t not in component:
        return math.inf

    vertices = sorted(component)
    laplacian, index = _component_laplacian(graph, vertices)
    rhs = np.zeros(len(vertices), dtype=np.float64)
    rhs[index[s]] = 1.0
    rhs[index[t]] = -1.0
    x = _solve_grounded(laplacian, rhs, config.DIRECT_SOLVER_LIMIT, config.SOLVER_RTOL)
    return float(x[index[s]] - x[index[t]])


def electrical_flow(graph: WeightedGraph, s: int, t: int) -> Flow:
    """Unit s-t electrical flow; its energy equals R(s, t)."""
    if t not in graph.component_of(s):
        raise InfeasibleDemandError(f"Vertices {s} and {t} are disconnected")
    phi = solve_potentials(graph, unit_demand(graph.num_vertices, s, t))
    return flow_from_potentials(graph, phi, s, t)


def _component_pseudoinverse(graph: WeightedGraph, component: List[int]) -> Tuple[np.ndarray, Dict[int, int]]:
    laplacian, index = _component_laplacian(graph, component)
    return np.linalg.pinv(laplacian.toarray(), hermitian=True), index


def edge_resistances(graph: WeightedGraph) -> Dict[Tuple[int, int], float]:
    """Effective resistance across every merged edge (leverage score / weight)."""
    result: Dict[Tuple[int, int], float] = {}
    merged = graph.merged_weights()
    for component in graph.components(graph.vertices_with_edges()):
        members = set(component)
        keys = [key for key in merged if key[0] in members]
        if len(component) <= config.DIRECT_SOLVER_LIMIT:
            pinv, index = _component_pseudoinverse(graph, component)
            for a, b in keys:
                ia, ib = index[a], index[b]
                result[(a, b)] = float(pinv[ia, ia] + pinv[ib, ib] - 2.0 * pinv[ia, ib])
        else:
            for a, b in keys:
                result[(a, b)] = effective_resistance(graph, a, b)
    return result


def resistance_matrix(graph: WeightedGraph, vertices: Sequence[int]) -> np.ndarray:
    """Pairwise effective resistances among ``vertices`` (inf across components)."""
    k = len(vertices)
    matrix = np.full((k, k), math.inf)
    np.fill_diagonal(matrix, 0.0)
    position = {v: i for i, v in enumerate(vertices)}

    for v in vertices:
        graph.check_vertex(v)
    handled = set()
    for v in vertices:
        if v in handled:
            continue
        members = graph.component_of(v)
        handled.update(members)
        component = sorted(members)
        inside = [x for x in vertices if x in members]
        if len(inside) < 2:
            continue
        if len(component) <= config.DIRECT_SOLVER_LIMIT:
            pinv, index = _component_pseudoinverse(graph, component)
            for a, b in itertools.combinations(inside, 2):
                ia, ib = index[a], index[b]
                value = float(pinv[ia, ia] + pinv[ib, ib] - 2.0 * pinv[ia, ib])
                matrix[position[a], position[b]] = matrix[position[b], position[a]] = value
        else:
            for a, b in itertools.combinations(inside, 2):
                value = effective_resistance(graph, a, b)
                matrix[position[a], position[b]] = matrix[position[b], position[a]] = value
    return matrix


def resistance_distortion(graph: WeightedGraph, sparsifier: WeightedGraph, terminals: Sequence[int]) -> float:
    """Worst max(R_H/R_G, R_G/R_H) over terminal pairs; inf if connectivity differs."""
    terminals = sorted(set(terminals))
    original = resistance_matrix(graph, terminals)
    compressed = resistance_matrix(sparsifier, terminals)
    worst = 1.0
    for i, j in itertools.combinations(range(len(terminals)), 2):
        a, b = original[i, j], compressed[i, j]
        if math.isinf(a) and math.isinf(b):
            continue
        if math.isinf(a) or math.isinf(b) or a <= 0.0 or b <= 0.0:
            return math.inf
        worst = max(worst, a / b, b / a)
    return worst
