import itertools
import math

import numpy as np
import pytest

from src.dynamic import DeleteBetween, EFlowStructure, ef_new, ef_query, ef_update
from src.errors import DivisionError, GraphError, InvariantViolation, QueryError
from src.graph import DeleteEdge, InsertEdge, WeightedGraph
from src.oracles import oracle_energy
from src.utils.generators import random_planar_graph
from tests.conftest import path_graph


EPS = 0.3


def assert_matches_oracle(structure: EFlowStructure, graph: WeightedGraph, pairs):
    for s, t in pairs:
        expected = oracle_energy(graph, s, t)
        answer = structure.query(s, t)
        if math.isinf(expected):
            assert math.isinf(answer)
        else:
            assert answer == pytest.approx(structure.scale * expected, rel=1e-6)


def test_single_region_is_exact_up_to_scale():
    structure = EFlowStructure(path_graph(5), r=8, epsilon=EPS)
    assert structure.division.region_count == 1
    assert structure.query(0, 4) == pytest.approx((1 - EPS / 6) * 4.0)


def test_grid_queries_match_scaled_resistance(grid64):
    structure = EFlowStructure(grid64, r=8, epsilon=EPS, seed=1)
    assert structure.division.region_count > 1
    pairs = [(0, 63), (7, 56), (9, 30), (20, 21)]
    assert_matches_oracle(structure, grid64, pairs)
    for s, t in pairs:
        ratio = structure.query(s, t) / oracle_energy(grid64, s, t)
        assert abs(ratio - 1.0) <= EPS


def test_query_graph_is_smaller_than_input(grid64):
    structure = EFlowStructure(grid64, r=8, epsilon=EPS)
    structure.query(0, 63)
    assert 0 < structure.stats.last_query_edges <= grid64.num_edges


@pytest.mark.parametrize("seed", range(3))
def test_random_updates_track_oracle(seed):
    instance = random_planar_graph(60, seed=seed)
    graph = instance.graph.copy()
    structure = ef_new(instance.graph, 12, EPS, seed=seed)
    pool = list(instance.removed)
    rng = np.random.default_rng(seed)

    for step in range(20):
        if pool and step % 2 == 0:
            u, v, w = pool.pop()
            action = InsertEdge(u, v, w)
        else:
            ids = sorted(graph.edge_ids())
            edge = graph.edge(ids[int(rng.integers(len(ids)))])
            pool.append((edge.u, edge.v, edge.weight))
            action = DeleteEdge(edge.edge_id)
        graph.mutate_edge(action)
        ef_update(structure, action)

        s, t = (int(x) for x in rng.choice(60, size=2, replace=False))
        expected = oracle_energy(graph, s, t)
        answer = ef_query(structure, s, t)
        if math.isinf(expected):
            assert math.isinf(answer)
        else:
            assert abs(answer / expected - 1.0) <= EPS

    assert not structure.division_report().hard_failures()


def test_delete_between_resolves_lowest_id_edge():
    graph = WeightedGraph.from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 1, 1.0)])
    structure = EFlowStructure(graph, r=4, epsilon=EPS)
    change = structure.apply_update(DeleteBetween(0, 1))
    assert change.edge.edge_id == 0
    assert structure.query(0, 3) == pytest.approx(structure.scale * 3.0)


def test_disconnected_and_isolated_vertices_are_infinite():
    graph = WeightedGraph.from_edges(6, [(0, 1, 1.0), (2, 3, 1.0), (3, 4, 1.0)])
    structure = EFlowStructure(graph, r=4, epsilon=EPS)
    assert math.isinf(structure.query(0, 4))
    assert math.isinf(structure.query(0, 5))


def test_deleting_a_bridge_makes_energy_infinite():
    structure = EFlowStructure(path_graph(6), r=4, epsilon=EPS)
    structure.apply_update(DeleteBetween(2, 3))
    assert math.isinf(structure.query(0, 5))
    structure.apply_update(InsertEdge(2, 3, 1.0))
    assert structure.query(0, 5) == pytest.approx(structure.scale * 5.0)


def test_invalid_queries_raise(path4):
    structure = EFlowStructure(path4, r=4, epsilon=EPS)
    with pytest.raises(QueryError):
        structure.query(1, 1)
    with pytest.raises(QueryError):
        structure.query(0, 9)


def test_invalid_updates_raise(path4):
    structure = EFlowStructure(path4, r=4, epsilon=EPS)
    with pytest.raises(GraphError):
        structure.apply_update(DeleteBetween(0, 3))
    with pytest.raises(GraphError):
        structure.apply_update(InsertEdge(0, 0, 1.0))


def test_parameters_are_validated(path4):
    with pytest.raises(DivisionError):
        EFlowStructure(path4, r=3, epsilon=EPS)
    with pytest.raises(GraphError):
        EFlowStructure(path4, r=4, epsilon=1.0)


def test_periodic_rebuild():
    structure = EFlowStructure(path_graph(16), r=8, epsilon=EPS, rebuild_constant=1.0)
    assert structure.rebuild_period == 2
    structure.apply_update(InsertEdge(0, 2, 1.0))
    assert structure.stats.rebuilds == 1
    structure.apply_update(InsertEdge(4, 6, 1.0))
    assert structure.stats.rebuilds == 2
    assert structure.ops_since_rebuild == 0


def test_audit_rejects_non_planar_insertion():
    edges = [(a, b, 1.0) for a, b in itertools.combinations(range(5), 2) if (a, b) != (3, 4)]
    structure = EFlowStructure(WeightedGraph.from_edges(5, edges), r=4, epsilon=EPS, audit=True)
    with pytest.raises(InvariantViolation):
        structure.apply_update(InsertEdge(3, 4, 1.0))


def test_input_graph_is_not_mutated(path4):
    structure = EFlowStructure(path4, r=4, epsilon=EPS)
    structure.apply_update(InsertEdge(0, 3, 1.0))
    assert path4.num_edges == 3


def two_squares() -> WeightedGraph:
    return WeightedGraph.from_edges(
        8,
        [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (4, 5, 1.0), (5, 6, 1.0), (6, 7, 1.0), (7, 4, 1.0)],
    )


class TestUpdateWork:
    def test_insert_inside_region_rebuilds_one_sparsifier(self):
        structure = EFlowStructure(two_squares(), r=4, epsilon=EPS)
        assert structure.division.region_count == 2
        builds = structure.stats.sparsifier_builds
        structure.apply_update(InsertEdge(0, 2, 1.0))
        assert structure.stats.last_update_builds == 1
        assert structure.stats.sparsifier_builds - builds == 1
        assert structure.division.region_count == 2

    def test_insert_across_regions_rebuilds_both_plus_singleton(self):
        structure = EFlowStructure(two_squares(), r=4, epsilon=EPS)
        left, right = structure.division.home_region(0), structure.division.home_region(4)
        structure.apply_update(InsertEdge(0, 4, 1.0))
        assert structure.stats.last_update_builds == 3
        assert structure.division.region_count == 3
        (singleton,) = set(structure.division.region_ids()) - {left, right}
        assert structure.division.regions[singleton].boundary == {0, 4}
        assert set(structure.sparsifiers) == {left, right, singleton}
        assert structure.query(1, 5) == pytest.approx(structure.scale * oracle_energy(structure.graph, 1, 5), rel=1e-6)

    @pytest.mark.parametrize("seed", range(3))
    def test_random_updates_rebuild_at_most_three_regions(self, seed):
        instance = random_planar_graph(80, seed=seed)
        structure = EFlowStructure(instance.graph, r=10, epsilon=EPS, seed=seed, rebuild_constant=100.0)
        pool = list(instance.removed)
        rng = np.random.default_rng(seed)
        for step in range(40):
            builds = structure.stats.sparsifier_builds
            if pool and step % 2 == 0:
                u, v, w = pool.pop(int(rng.integers(len(pool))))
                structure.apply_update(InsertEdge(u, v, w))
            else:
                ids = sorted(structure.graph.edge_ids())
                edge = structure.graph.edge(ids[int(rng.integers(len(ids)))])
                pool.append((edge.u, edge.v, edge.weight))
                structure.apply_update(DeleteEdge(edge.edge_id))
            assert structure.stats.last_update_builds <= 3
            assert structure.stats.sparsifier_builds - builds == structure.stats.last_update_builds
