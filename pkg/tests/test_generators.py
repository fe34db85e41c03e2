import networkx as nx
import pytest

from src.data_models import ReplayParams
from src.errors import GraphError, QueryError
from src.utils.bench import BENCH_COLUMNS, bench_frame, bench_sweep
from src.utils.generators import grid_graph, omv_matrix, random_planar_graph, random_script
from src.utils.seeding import derive_seed


def as_networkx(graph, extra=()):
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(graph.num_vertices))
    nx_graph.add_edges_from((e.u, e.v) for e in graph.edges())
    nx_graph.add_edges_from(extra)
    return nx_graph


def test_grid_sizes():
    assert grid_graph(16).graph.num_edges == 24
    assert grid_graph(64).graph.num_edges == 112
    assert grid_graph(10).graph.num_vertices == 9


def test_random_planar_graph_with_removed_edges_is_planar():
    instance = random_planar_graph(80, seed=2)
    full = as_networkx(instance.graph, [(u, v) for u, v, _ in instance.removed])
    assert full.number_of_edges() == 3 * 80 - 6
    assert nx.check_planarity(full)[0]
    assert len(instance.removed) == round(0.2 * (3 * 80 - 6))


def test_random_planar_weights_lie_in_range():
    graph = random_planar_graph(50, seed=1).graph
    assert all(0.5 <= e.weight <= 2.0 for e in graph.edges())


def test_generators_are_seeded():
    first = random_planar_graph(40, seed=7)
    second = random_planar_graph(40, seed=7)
    assert first.graph.edge_multiset() == second.graph.edge_multiset()
    assert first.removed == second.removed
    assert (omv_matrix(5, seed=3) == omv_matrix(5, seed=3)).all()


def test_invalid_sizes_raise():
    with pytest.raises(GraphError):
        grid_graph(0)
    with pytest.raises(GraphError):
        random_planar_graph(10, delete_fraction=1.0)
    with pytest.raises(GraphError):
        omv_matrix(0)


@pytest.mark.parametrize("mode, kind", [("eflow", "Q"), ("maxflow", "QF"), ("apsp", "QD")])
def test_script_counts_and_kinds(mode, kind):
    instance = random_planar_graph(30, seed=0)
    ops = random_script(instance, updates=20, queries=8, seed=0, mode=mode)
    assert sum(op.is_update for op in ops) == 20
    assert [op.kind for op in ops if not op.is_update] == [kind] * 8


def test_script_keeps_graph_planar():
    instance = random_planar_graph(40, seed=5)
    graph = instance.graph.copy()
    for op in random_script(instance, updates=60, queries=0, seed=5):
        if op.kind == "I":
            graph.add_edge(op.u, op.v, op.weight)
        else:
            graph.remove_edge(graph.find_edge(op.u, op.v).edge_id)
        assert nx.check_planarity(as_networkx(graph))[0]


def test_activation_script_queries_active_vertices():
    instance = random_planar_graph(20, seed=1)
    ops = random_script(instance, updates=10, queries=6, seed=1, mode="subgraph")
    active = set()
    for op in ops:
        if op.kind == "A":
            assert op.u not in active
            active.add(op.u)
        else:
            assert {op.u, op.v} <= active
    assert len(active) == 10


def test_activation_script_emits_every_requested_query():
    instance = random_planar_graph(20, seed=2)
    ops = random_script(instance, updates=2, queries=7, seed=2, mode="subgraph")
    assert sum(op.kind == "Q" for op in ops) == 7


def test_activation_script_without_two_activations_raises():
    instance = random_planar_graph(20, seed=2)
    with pytest.raises(QueryError):
        random_script(instance, updates=1, queries=3, seed=2, mode="subgraph")


def test_activation_script_caps_activations_with_warning(caplog):
    instance = grid_graph(9)
    with caplog.at_level("WARNING", logger="src.utils.generators"):
        ops = random_script(instance, updates=20, queries=2, seed=0, mode="subgraph")
    assert sum(op.kind == "A" for op in ops) == 9
    assert "Only 9 vertices" in caplog.text


def test_derived_seeds_are_stable_and_distinct():
    assert derive_seed(3, 1) == derive_seed(3, 1)
    assert len({derive_seed(3, k) for k in range(50)}) == 50


def test_bench_sweep_rows():
    instance = random_planar_graph(30, seed=3)
    ops = random_script(instance, updates=6, queries=4, seed=3)
    rows = bench_sweep(instance.graph, ops, "eflow", [4, 8], seed=3, params=ReplayParams(epsilon=0.3))
    frame = bench_frame(rows)
    assert list(frame.columns) == BENCH_COLUMNS
    assert list(frame["r"]) == [4, 8]
    assert (frame["failure_rate"] == 0.0).all()
    assert (frame["mean_query_graph_edges"] > 0).all()
