"""
Command-line front end for the dynamic vertex-sparsifier toolkit.

    gen    write a grid, random planar graph or OMv matrix (plus an optional script or query vectors)
    run    replay a script against a dynamic structure and the oracle, JSON lines on stdout
    bench  sweep the region size and write timing CSV
    audit  build an r-division and print the validator report as JSON
    omv    answer u^T M v queries through the vertex-activation gadget, JSON lines on stdout

Exit codes: 0 ok, 1 other toolkit error, 2 parse or input error, 3 invariant violation.
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional

from config import config
from src.data_models import ReplayParams, ReplayReport
from src.dynamic.omv import omv_answer, omv_build, omv_engine
from src.errors import DynSparsError, GraphError, InvariantViolation, QueryError, ScriptParseError
from src.oracles.replay import REPLAY_MODES, replay_compare, replay_job, report_lines
from src.parsing.instance_parser import InstanceParser, format_graph, format_matrix, format_script, format_vector_pairs
from src.partition.rdivision import build_rdivision, validate_rdivision
from src.utils.bench import bench_sweep, write_bench_csv
from src.utils.generators import (
    GENERATOR_KINDS,
    PlanarInstance,
    grid_graph,
    omv_matrix,
    omv_queries,
    random_planar_graph,
    random_script,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3

instance_parser = InstanceParser()


def setup_logging(level: Optional[str] = None) -> None:
    """Configure the root logger once, on stderr."""
    logging.basicConfig(
        level=getattr(logging, (level or config.LOG_LEVEL).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _r_list(text: str) -> List[int]:
    try:
        values = [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a comma-separated list of integers, got '{text}'") from None
    if not values:
        raise argparse.ArgumentTypeError("The r-sweep list is empty")
    return values


def _replay_params(args: argparse.Namespace) -> ReplayParams:
    return ReplayParams(
        r=args.r,
        epsilon=args.eps,
        q=args.q,
        strategy=args.strategy,
        worst_case=args.worst_case,
        audit=args.audit,
    )


def cmd_gen(args: argparse.Namespace) -> int:
    """Write a generated instance; without --out the main file goes to stdout."""
    if args.kind == "omv":
        matrix = omv_matrix(args.size, seed=args.seed, density=args.density)
        _emit(format_matrix(matrix), args.out, ".mat")
        if args.queries:
            if args.out is None:
                logger.warning("No --out prefix given; the query vectors are not written")
            else:
                pairs = omv_queries(matrix.shape, args.queries, seed=args.seed, density=args.density)
                _emit(format_vector_pairs(pairs), args.out, ".vec")
        return EXIT_OK

    if args.kind == "grid":
        instance = grid_graph(args.size)
    else:
        instance = random_planar_graph(args.size, seed=args.seed, delete_fraction=args.delete_fraction)
    _emit(format_graph(instance.graph), args.out, ".graph")

    if args.ops or args.queries:
        ops = random_script(instance, args.ops, args.queries, seed=args.seed, mode=args.mode)
        if args.out is None:
            logger.warning("No --out prefix given; the script is not written")
        else:
            _emit(format_script(ops), args.out, ".ops")
    return EXIT_OK


def _emit(text: str, prefix: Optional[str], suffix: str) -> None:
    if prefix is None:
        sys.stdout.write(text)
        return
    path = Path(prefix + suffix)
    path.write_text(text, encoding="utf-8")
    logger.info("Wrote %s", path)


def _replay_reports(args: argparse.Namespace) -> List[ReplayReport]:
    graph = instance_parser.parse_graph(args.graph)
    ops = instance_parser.parse_script(args.script)
    params = _replay_params(args)
    seeds = [args.seed + k for k in range(max(1, args.repeat))]

    if args.jobs > 1 and len(seeds) > 1:
        jobs = [(graph, ops, args.mode, params, seed) for seed in seeds]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(replay_job, jobs))
    return [replay_compare(graph, ops, args.mode, params, seed) for seed in seeds]


def cmd_run(args: argparse.Namespace) -> int:
    """Replay and print one JSON object per query."""
    for report in _replay_reports(args):
        for line in report_lines(report, include_timings=not args.no_timings):
            print(line)
        logger.info(
            "Seed %d: %d updates, %d queries, failure fraction %.4f",
            report.seed, report.updates, len(report.records), report.failure_fraction,
        )
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Sweep r and write the CSV (stdout without --out)."""
    graph = instance_parser.parse_graph(args.graph)
    if args.script:
        ops = instance_parser.parse_script(args.script)
    else:
        ops = random_script(PlanarInstance(graph), args.ops, args.queries, seed=args.seed, mode=args.mode)
    rows = bench_sweep(graph, ops, args.mode, args.r_sweep, seed=args.seed, params=_replay_params(args))
    write_bench_csv(rows, args.out if args.out else sys.stdout)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    """Build a division and print its validator report."""
    graph = instance_parser.parse_graph(args.graph)
    division = build_rdivision(graph, args.r, separator=args.separator, seed=args.seed)
    report = validate_rdivision(division, graph)
    print(json.dumps(report.model_dump(), indent=2))
    if report.hard_failures():
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_omv(args: argparse.Namespace) -> int:
    """Answer each vector pair on a fresh engine and check it against the boolean product."""
    matrix = instance_parser.parse_matrix(args.matrix)
    pairs = instance_parser.parse_vector_pairs(args.vectors, shape=matrix.shape)
    instance = omv_build(matrix)
    mismatches = 0
    for index, (u, v) in enumerate(pairs):
        engine = omv_engine(instance, r=args.r, epsilon=args.eps, seed=args.seed)
        answer = omv_answer(instance, u, v, engine=engine)
        expected = int(bool(u @ matrix @ v))
        record = {"index": index, "answer": answer, "expected": expected}
        if answer:
            record["energy"] = engine.query(instance.source, instance.sink)
        print(json.dumps(record))
        mismatches += answer != expected
    logger.info("Answered %d OMv queries on a %d x %d matrix", len(pairs), *matrix.shape)
    if mismatches:
        raise InvariantViolation(f"{mismatches} OMv answers disagree with the boolean product")
    return EXIT_OK


def _add_replay_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--mode", choices=REPLAY_MODES, default="eflow", help="Structure to replay")
    sub.add_argument("--r", type=int, default=None, help="Region size bound (default max(4, n^(2/3)))")
    sub.add_argument("--eps", type=float, default=None, help=f"Accuracy parameter (default {config.DEFAULT_EPS})")
    sub.add_argument("--q", type=int, default=None, help=f"Spanner parameter (default {config.DEFAULT_SPANNER_Q})")
    sub.add_argument("--strategy", default=None, help="Cut sparsifier strategy for maxflow mode")
    sub.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="Master seed")
    sub.add_argument("--worst-case", action="store_true", help="Use the worst-case rebuilding scheduler")
    sub.add_argument("--audit", action="store_true", default=config.AUDIT, help="Check invariants after every update")


def build_parser() -> argparse.ArgumentParser:
    cli = argparse.ArgumentParser(prog="dynspars", description="Dynamic vertex-sparsifier toolkit")
    cli.add_argument("--log-level", default=None, help=f"Logging level (default {config.LOG_LEVEL})")
    commands = cli.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="Generate an instance")
    gen.add_argument("kind", choices=GENERATOR_KINDS)
    gen.add_argument("--size", type=int, required=True, help="Vertex count (matrix side for omv)")
    gen.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    gen.add_argument("--out", default=None, help="Output path prefix; suffixes .graph/.ops/.mat/.vec are added")
    gen.add_argument("--ops", type=int, default=0, help="Updates in the generated script")
    gen.add_argument("--queries", type=int, default=0, help="Queries in the generated script (vector pairs for omv)")
    gen.add_argument("--mode", choices=REPLAY_MODES, default="eflow", help="Query kind of the generated script")
    gen.add_argument("--delete-fraction", type=float, default=0.2, help="Edges removed from a random planar graph")
    gen.add_argument("--density", type=float, default=0.5, help="Fraction of ones in an omv matrix and its vectors")
    gen.set_defaults(handler=cmd_gen)

    run = commands.add_parser("run", help="Replay a script against the oracle")
    run.add_argument("graph")
    run.add_argument("script")
    _add_replay_flags(run)
    run.add_argument("--repeat", type=int, default=1, help="Replay consecutive seeds")
    run.add_argument("--jobs", type=int, default=1, help="Parallel processes for --repeat")
    run.add_argument("--no-timings", action="store_true", help="Omit per-query timings from the output")
    run.set_defaults(handler=cmd_run)

    bench = commands.add_parser("bench", help="Sweep the region size")
    bench.add_argument("graph")
    bench.add_argument("script", nargs="?", default=None, help="Script (generated when omitted)")
    _add_replay_flags(bench)
    bench.add_argument("--r-sweep", type=_r_list, required=True, help="Comma-separated region sizes")
    bench.add_argument("--ops", type=int, default=50, help="Updates of a generated script")
    bench.add_argument("--queries", type=int, default=20, help="Queries of a generated script")
    bench.add_argument("--out", default=None, help="CSV path")
    bench.set_defaults(handler=cmd_bench)

    audit = commands.add_parser("audit", help="Validate an r-division")
    audit.add_argument("graph")
    audit.add_argument("--r", type=int, required=True, help="Region size bound")
    audit.add_argument("--separator", default=None, help="Separator strategy")
    audit.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    audit.set_defaults(handler=cmd_audit)

    omv = commands.add_parser("omv", help="Answer boolean products through the activation gadget")
    omv.add_argument("matrix", help="0/1 matrix file")
    omv.add_argument("vectors", help="Vector file, one 'u v' pair per line")
    omv.add_argument("--r", type=int, default=None, help="Region size bound (default max(4, n^(2/3)))")
    omv.add_argument("--eps", type=float, default=None, help=f"Accuracy parameter (default {config.DEFAULT_EPS})")
    omv.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="Master seed")
    omv.set_defaults(handler=cmd_omv)
    return cli


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    if not config.validate_config():
        logger.warning("Configuration warnings detected; see messages above")

    try:
        return args.handler(args)
    except ScriptParseError as e:
        print(f"Parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantViolation as e:
        print(f"Invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (GraphError, QueryError) as e:
        print(f"Invalid input: {e}", file=sys.stderr)
        return EXIT_PARSE
    except DynSparsError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
