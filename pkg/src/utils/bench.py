"""
Region-size sweep: replay one script for every r and tabulate timings.
"""

import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, TextIO, Union

import numpy as np
import pandas as pd

from src.data_models import BenchRow, ReplayParams, ReplayReport
from src.graph.weighted_graph import WeightedGraph
from src.oracles.replay import replay_compare
from src.parsing.instance_parser import ScriptOp

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ["r", "mean_update_us", "p99_update_us", "mean_query_us", "failure_rate", "mean_query_graph_edges"]


def _mean(values: Sequence[float]) -> float:
    return float(np.mean(values)) if len(values) else 0.0


def bench_row(r: int, report: ReplayReport) -> BenchRow:
    return BenchRow(
        r=r,
        mean_update_us=_mean(report.update_micros),
        p99_update_us=float(np.percentile(report.update_micros, 99)) if report.update_micros else 0.0,
        mean_query_us=_mean([record.micros for record in report.records]),
        failure_rate=report.failure_fraction,
        mean_query_graph_edges=_mean(report.query_graph_edges),
    )


def bench_sweep(
    graph: WeightedGraph,
    ops: Sequence[ScriptOp],
    mode: str,
    r_values: Iterable[int],
    seed: int = 0,
    params: Optional[ReplayParams] = None,
) -> List[BenchRow]:
    """
    Replay ``ops`` once per region size.

    Args:
        graph: Initial graph
        ops: Script operations
        mode: Replay mode
        r_values: Region sizes to sweep
        seed: Master seed shared by every run
        params: Base parameters; ``r`` is overridden per run

    Returns:
        One BenchRow per r, in sweep order
    """
    params = params or ReplayParams()
    rows = []
    for r in r_values:
        report = replay_compare(graph, ops, mode, params.model_copy(update={"r": int(r)}), seed)
        row = bench_row(int(r), report)
        logger.info("Bench r=%d: mean update %.1f us, mean query %.1f us", row.r, row.mean_update_us, row.mean_query_us)
        rows.append(row)
    return rows


def bench_frame(rows: Sequence[BenchRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows], columns=BENCH_COLUMNS)


def write_bench_csv(rows: Sequence[BenchRow], destination: Union[str, Path, TextIO]) -> None:
    bench_frame(rows).to_csv(destination, index=False)
