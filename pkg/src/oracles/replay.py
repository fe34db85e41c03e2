"""
Replay an operation script against a dynamic structure and its oracle.

Modes and accepted operations:
    eflow     I, D, Q        energy, answer within (1 +- eps) of the oracle
    maxflow   I, D, Q, QF    oracle <= answer <= (max region quality) * oracle
    apsp      I, D, Q, QD    oracle <= answer <= (2q - 1) * oracle
    subgraph  A, Q           energy on G[S], within (1 +- eps) of the oracle
"""

import functools
import logging
import math
import time
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from config import config
from src.data_models import QueryRecord, ReplayParams, ReplayReport
from src.dynamic.apsp import APSPStructure
from src.dynamic.base_structure import DynamicStructure, resolve_action
from src.dynamic.eflow import EFlowStructure
from src.dynamic.maxflow import MaxFlowStructure
from src.dynamic.scheduler import RebuildScheduler
from src.dynamic.subgraph import SubgraphEFlow
from src.errors import GraphError, ScriptParseError
from src.graph.weighted_graph import GraphMode, WeightedGraph, induced_subgraph
from src.oracles.oracles import oracle_distance, oracle_energy, oracle_maxflow
from src.parsing.instance_parser import ScriptOp

logger = logging.getLogger(__name__)

REPLAY_MODES = ("eflow", "maxflow", "apsp", "subgraph")
MODE_QUERY_KINDS = {
    "eflow": ("Q",),
    "maxflow": ("Q", "QF"),
    "apsp": ("Q", "QD"),
    "subgraph": ("Q",),
}
SLACK = 1e-9

Served = Union[DynamicStructure, RebuildScheduler]


def default_region_size(num_vertices: int) -> int:
    """max(4, ceil(n^(2/3)))."""
    return max(config.MIN_REGION_SIZE, math.ceil(max(num_vertices, 1) ** (2.0 / 3.0)))


def query_ratio(answer: float, oracle: float) -> float:
    """answer / oracle, with both-infinite and both-zero counted as exact."""
    if math.isinf(oracle):
        return 1.0 if math.isinf(answer) else 0.0
    if oracle == 0.0:
        return 1.0 if answer == 0.0 else math.inf
    return answer / oracle


def within_tolerance(mode: str, ratio: float, epsilon: float, quality: float) -> bool:
    if mode in ("eflow", "subgraph"):
        return abs(ratio - 1.0) <= epsilon + SLACK
    return 1.0 - SLACK <= ratio <= quality + SLACK


def _structure_factory(mode: str, r: int, params: ReplayParams, seed: int) -> Callable[..., DynamicStructure]:
    if mode == "eflow":
        return functools.partial(EFlowStructure, r=r, epsilon=params.epsilon, seed=seed, audit=params.audit)
    if mode == "maxflow":
        return functools.partial(MaxFlowStructure, r=r, strategy=params.strategy, seed=seed, audit=params.audit)
    return functools.partial(APSPStructure, r=r, q=params.q, seed=seed, audit=params.audit)


def _oracle_for(mode: str) -> Callable[[WeightedGraph, int, int], float]:
    if mode == "maxflow":
        return oracle_maxflow
    if mode == "apsp":
        return oracle_distance
    return oracle_energy


def _served_structure(served: Served) -> DynamicStructure:
    return served.serving if isinstance(served, RebuildScheduler) else served


def _check_op(mode: str, op: ScriptOp) -> None:
    if op.kind == "A":
        if mode != "subgraph":
            raise ScriptParseError(f"Activation is only valid in subgraph mode, not {mode}", op.line_number)
    elif op.is_update:
        if mode == "subgraph":
            raise ScriptParseError("Edge updates are not valid in subgraph mode", op.line_number)
    elif op.kind not in MODE_QUERY_KINDS[mode]:
        raise ScriptParseError(f"Query {op.kind} is not valid in {mode} mode", op.line_number)


def replay_compare(
    graph: WeightedGraph,
    ops: Sequence[ScriptOp],
    mode: str,
    params: Optional[ReplayParams] = None,
    seed: Optional[int] = None,
) -> ReplayReport:
    """
    Run a script through a dynamic structure and the from-scratch oracle side by side.

    Args:
        graph: Initial graph (weights read as the mode requires)
        ops: Parsed script operations
        mode: One of eflow, maxflow, apsp, subgraph
        params: Structure parameters
        seed: Master seed of the structure

    Returns:
        ReplayReport with one QueryRecord per query

    Raises:
        ScriptParseError: If an operation is not valid in the mode
        QueryError: If a query names an invalid endpoint
        InvariantViolation: In audit mode, if a checked invariant breaks
    """
    if mode not in REPLAY_MODES:
        raise GraphError(f"Unknown replay mode '{mode}'; expected one of {', '.join(REPLAY_MODES)}")
    params = params or ReplayParams()
    seed = config.DEFAULT_SEED if seed is None else int(seed)
    epsilon = config.DEFAULT_EPS if params.epsilon is None else params.epsilon
    params = params.model_copy(update={"epsilon": epsilon})
    for op in ops:
        _check_op(mode, op)

    r = params.r if params.r is not None else default_region_size(graph.num_vertices)
    report = ReplayReport(mode=mode, seed=seed, worst_case=params.worst_case and mode != "subgraph")
    oracle_graph = graph.copy()

    if mode == "subgraph":
        if params.worst_case:
            logger.warning("The worst-case scheduler does not apply to subgraph mode; ignoring it")
        engine = SubgraphEFlow(graph, r, epsilon, seed=seed)
        _replay_subgraph(engine, oracle_graph, ops, report)
        return report

    factory = _structure_factory(mode, r, params, seed)
    served: Served = RebuildScheduler(factory, graph) if params.worst_case else factory(graph)
    oracle = _oracle_for(mode)

    for index, op in enumerate(ops):
        if op.is_update:
            action = resolve_action(oracle_graph, op.to_action())
            start = time.perf_counter()
            if isinstance(served, RebuildScheduler):
                served.apply(action)
            else:
                served.apply_update(action)
            report.update_micros.append((time.perf_counter() - start) * 1e6)
            oracle_graph.mutate_edge(action)
            report.updates += 1
            continue

        start = time.perf_counter()
        answer = served.query(op.u, op.v)
        micros = (time.perf_counter() - start) * 1e6
        structure = _served_structure(served)
        report.query_graph_edges.append(structure.stats.last_query_edges)
        if mode == "maxflow":
            quality = structure.quality
        elif mode == "apsp":
            quality = float(structure.stretch)
        else:
            quality = 1.0
        _record(report, mode, index, op, answer, oracle(oracle_graph, op.u, op.v), micros, epsilon, quality)

    logger.info(
        "Replayed %d operations in %s mode: %d/%d finite queries outside tolerance",
        len(ops), mode, report.failures, report.finite_queries,
    )
    return report


def _replay_subgraph(engine: SubgraphEFlow, graph: WeightedGraph, ops: Sequence[ScriptOp], report: ReplayReport) -> None:
    for index, op in enumerate(ops):
        if op.kind == "A":
            start = time.perf_counter()
            engine.activate(op.u)
            report.update_micros.append((time.perf_counter() - start) * 1e6)
            report.updates += 1
            continue
        start = time.perf_counter()
        answer = engine.query(op.u, op.v)
        micros = (time.perf_counter() - start) * 1e6
        report.query_graph_edges.append(engine.stats.last_query_edges)
        oracle = oracle_energy(induced_subgraph(graph, engine.active), op.u, op.v)
        _record(report, "subgraph", index, op, answer, oracle, micros, engine.epsilon, 1.0)


def _record(
    report: ReplayReport,
    mode: str,
    index: int,
    op: ScriptOp,
    answer: float,
    oracle: float,
    micros: float,
    epsilon: float,
    quality: float,
) -> None:
    ratio = query_ratio(answer, oracle)
    report.records.append(
        QueryRecord(
            op_index=index,
            kind=op.kind,
            s=op.u,
            t=op.v,
            answer=answer,
            oracle=oracle,
            ratio=ratio,
            micros=micros,
            seed=report.seed,
        )
    )
    if math.isfinite(oracle):
        report.finite_queries += 1
        if not within_tolerance(mode, ratio, epsilon, quality):
            report.failures += 1
            logger.warning(
                "Query %d (%d, %d): answer %.6g vs oracle %.6g (ratio %.6g) outside tolerance",
                index, op.u, op.v, answer, oracle, ratio,
            )


def report_lines(report: ReplayReport, include_timings: bool = True) -> List[str]:
    """One JSON object per query record."""
    exclude = None if include_timings else {"micros"}
    return [record.model_dump_json(exclude=exclude) for record in report.records]


def replay_many(
    graph: WeightedGraph,
    ops: Sequence[ScriptOp],
    mode: str,
    params: Optional[ReplayParams],
    seeds: Iterable[int],
) -> List[ReplayReport]:
    """Sequential replays over several seeds."""
    return [replay_compare(graph, ops, mode, params, seed) for seed in seeds]


def replay_job(args: Tuple[WeightedGraph, Sequence[ScriptOp], str, Optional[ReplayParams], int]) -> ReplayReport:
    """Picklable single-replay entry point for process pools."""
    graph, ops, mode, params, seed = args
    return replay_compare(graph, ops, mode, params, seed)
