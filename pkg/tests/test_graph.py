import numpy as np
import pytest

from src.errors import DimensionError, GraphError
from src.graph import (
    DeleteEdge,
    GraphMode,
    InsertEdge,
    WeightedGraph,
    connected,
    graph_union,
    induced_subgraph,
    mutate_edge,
    quadratic_form,
    unit_demand,
)
from tests.conftest import cycle_graph, path_graph, random_connected_graph


def test_insert_returns_fresh_ids_and_degree_crossings():
    graph = WeightedGraph(3)
    first = mutate_edge(graph, InsertEdge(0, 1, 2.0))
    second = mutate_edge(graph, InsertEdge(1, 2, 1.0))

    assert first.is_insert
    assert first.edge.edge_id == 0
    assert second.edge.edge_id == 1
    assert set(first.degree_crossed_zero) == {0, 1}
    assert second.degree_crossed_zero == (2,)


def test_delete_reports_isolated_endpoints():
    graph = path_graph(3)
    change = graph.mutate_edge(DeleteEdge(0))
    assert change.kind == "delete"
    assert change.degree_crossed_zero == (0,)
    assert graph.num_edges == 1


def test_edge_ids_are_never_reused():
    graph = path_graph(3)
    graph.remove_edge(1)
    edge = graph.add_edge(1, 2, 1.0)
    assert edge.edge_id == 2


def test_parallel_edges_merge_by_mode():
    conductance = WeightedGraph.from_edges(2, [(0, 1, 1.0), (1, 0, 2.0)])
    length = conductance.with_mode(GraphMode.LENGTH)
    assert conductance.merged_weights() == {(0, 1): 3.0}
    assert length.merged_weights() == {(0, 1): 1.0}


@pytest.mark.parametrize(
    "action",
    [InsertEdge(0, 0, 1.0), InsertEdge(0, 5, 1.0), InsertEdge(0, 1, 0.0), InsertEdge(0, 1, -2.0)],
)
def test_invalid_insertions_raise(action):
    with pytest.raises(GraphError):
        WeightedGraph(3).mutate_edge(action)


def test_unknown_edge_deletion_raises():
    with pytest.raises(GraphError):
        path_graph(3).mutate_edge(DeleteEdge(42))


def test_copy_preserves_ids_and_counter():
    graph = path_graph(4)
    graph.remove_edge(0)
    clone = graph.copy()
    assert sorted(clone.edge_ids()) == sorted(graph.edge_ids())
    assert clone.add_edge(0, 1, 1.0).edge_id == graph.add_edge(0, 1, 1.0).edge_id


def test_laplacian_matches_dense_definition(triangle):
    expected = np.array([[2.0, -1.0, -1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]])
    assert np.allclose(triangle.laplacian().dense(), expected)


def test_laplacian_rows_sum_to_zero():
    graph = random_connected_graph(20, 15, seed=4)
    dense = graph.laplacian().dense()
    assert np.allclose(dense.sum(axis=1), 0.0)
    assert np.allclose(dense, dense.T)


def test_quadratic_form_matches_matrix_product():
    graph = random_connected_graph(12, 8, seed=5)
    x = np.random.default_rng(0).standard_normal(12)
    view = graph.laplacian()
    assert quadratic_form(view, x) == pytest.approx(float(x @ view.dense() @ x))
    assert quadratic_form(graph, x) == pytest.approx(float(x @ view.dense() @ x))


def test_laplacian_rejects_wrong_vector_length(triangle):
    with pytest.raises(DimensionError):
        triangle.laplacian().matvec(np.ones(4))


def test_incidence_factorization():
    graph = random_connected_graph(10, 5, seed=6)
    view = graph.laplacian()
    b = view.incidence().toarray()
    assert np.allclose(b.T @ np.diag(view.weights) @ b, view.dense())


def test_union_laplacian_is_sum_of_parts():
    a = path_graph(4)
    b = cycle_graph(4, weight=2.0)
    union = graph_union([a, b])
    assert np.allclose(union.laplacian().dense(), a.laplacian().dense() + b.laplacian().dense())


def test_union_rejects_mismatched_id_spaces():
    with pytest.raises(GraphError):
        graph_union([path_graph(3), path_graph(4)])


def test_induced_subgraph_keeps_active_edges_only():
    graph = cycle_graph(4)
    sub = induced_subgraph(graph, [0, 1, 2])
    assert sub.num_vertices == 4
    assert {e.key for e in sub.edges()} == {(0, 1), (1, 2)}


def test_connectivity_after_two_deletions():
    graph = cycle_graph(4)
    graph.mutate_edge(DeleteEdge(0))
    graph.mutate_edge(DeleteEdge(2))
    assert connected(graph, 1, 2)
    assert not connected(graph, 0, 1)


def test_unit_demand_sums_to_zero():
    chi = unit_demand(5, 1, 3)
    assert chi.sum() == 0.0
    assert chi[1] == 1.0 and chi[3] == -1.0


def test_components_cover_every_vertex():
    graph = WeightedGraph.from_edges(5, [(0, 1, 1.0), (2, 3, 1.0)])
    assert graph.components() == [[0, 1], [2, 3], [4]]


@pytest.mark.parametrize("weight, expected", [(1.0, 4.0), (3.0, 12.0)])
def test_single_edge_quadratic_form(weight, expected):
    graph = WeightedGraph.from_edges(2, [(0, 1, weight)])
    assert quadratic_form(graph, unit_demand(2, 0, 1)) == pytest.approx(expected)


def test_constant_vector_has_zero_energy():
    graph = random_connected_graph(10, 10, seed=7)
    assert quadratic_form(graph, np.full(10, 2.5)) == pytest.approx(0.0, abs=1e-12)


def test_union_of_no_parts_is_empty():
    assert graph_union([], num_vertices=3).num_edges == 0


def test_insert_then_delete_restores_multiset():
    graph = random_connected_graph(8, 4, seed=2)
    before = graph.edge_multiset()
    change = graph.mutate_edge(InsertEdge(0, 5, 0.75))
    graph.mutate_edge(DeleteEdge(change.edge.edge_id))
    assert graph.edge_multiset() == before


def test_union_partition_laplacian_additivity():
    graph = random_connected_graph(20, 25, seed=3)
    ids = sorted(graph.edge_ids())
    parts = [graph.subgraph_from_edges(ids[k::3]) for k in range(3)]
    expected = sum(part.laplacian().dense() for part in parts)
    assert np.allclose(graph_union(parts).laplacian().dense(), expected, atol=1e-12)
    assert np.allclose(graph.laplacian().dense(), expected, atol=1e-12)
