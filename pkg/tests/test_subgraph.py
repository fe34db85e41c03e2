import math

import numpy as np
import pytest

from src.dynamic import SubgraphEFlow, omv_answer, omv_build, omv_engine, sg_activate, sg_new, sg_query
from src.errors import DimensionError, DivisionError, GraphError, QueryError
from src.graph import induced_subgraph
from src.oracles import oracle_energy
from src.utils.generators import omv_matrix
from tests.conftest import path_graph


EPS = 0.3


class TestActivation:
    def test_activation_rebuilds_regions_of_vertex(self, grid64):
        engine = SubgraphEFlow(grid64, r=8, epsilon=EPS)
        rebuilt = engine.activate(9)
        assert rebuilt == len(engine.division.regions_of(9))
        assert engine.activation_builds[9] == rebuilt
        assert 9 in engine.active

    def test_double_activation_raises(self, path4):
        engine = sg_new(path4, 4, EPS)
        sg_activate(engine, 1)
        with pytest.raises(GraphError):
            sg_activate(engine, 1)

    def test_unknown_vertex_raises(self, path4):
        with pytest.raises(GraphError):
            SubgraphEFlow(path4, r=4, epsilon=EPS).activate(10)

    def test_small_r_raises(self, path4):
        with pytest.raises(DivisionError):
            SubgraphEFlow(path4, r=2, epsilon=EPS)


class TestQueries:
    def test_inactive_endpoint_raises(self, path4):
        engine = SubgraphEFlow(path4, r=4, epsilon=EPS)
        engine.activate(0)
        with pytest.raises(QueryError):
            engine.query(0, 3)

    def test_equal_endpoints_raise(self, path4):
        engine = SubgraphEFlow(path4, r=4, epsilon=EPS)
        engine.activate(0)
        with pytest.raises(QueryError):
            engine.query(0, 0)

    def test_gap_in_active_path_is_infinite(self):
        engine = SubgraphEFlow(path_graph(5), r=4, epsilon=EPS)
        for v in (0, 1, 3, 4):
            engine.activate(v)
        assert math.isinf(sg_query(engine, 0, 4))
        engine.activate(2)
        assert sg_query(engine, 0, 4) == pytest.approx(engine.scale * 4.0)

    def test_all_active_matches_full_graph(self, grid64):
        engine = SubgraphEFlow(grid64, r=8, epsilon=EPS, seed=3)
        for v in range(64):
            engine.activate(v)
        for s, t in [(0, 63), (5, 40), (12, 13)]:
            assert engine.query(s, t) == pytest.approx(engine.scale * oracle_energy(grid64, s, t), rel=1e-6)

    @pytest.mark.parametrize("seed", range(3))
    def test_partial_activation_matches_induced_subgraph(self, seed, grid64):
        rng = np.random.default_rng(seed)
        engine = SubgraphEFlow(grid64, r=8, epsilon=EPS, seed=seed)
        order = [int(v) for v in rng.permutation(64)]
        for step, v in enumerate(order[:48]):
            engine.activate(v)
            if step < 2:
                continue
            s, t = (int(x) for x in rng.choice(sorted(engine.active), size=2, replace=False))
            expected = oracle_energy(induced_subgraph(grid64, engine.active), s, t)
            answer = engine.query(s, t)
            if math.isinf(expected):
                assert math.isinf(answer)
            else:
                assert abs(answer / expected - 1.0) <= EPS


class TestOMv:
    def test_gadget_layout(self):
        instance = omv_build([[1, 0], [0, 1]])
        assert instance.graph.num_vertices == 6
        assert instance.row_vertex(0) == 2
        assert instance.column_vertex(1) == 5
        assert instance.graph.num_edges == 2 + 2 + 2

    @pytest.mark.parametrize(
        "u, v, expected",
        [([1, 0], [1, 0], 1), ([1, 0], [0, 1], 0), ([0, 1], [0, 1], 1), ([0, 0], [1, 1], 0)],
    )
    def test_identity_products(self, u, v, expected):
        assert omv_answer(omv_build(np.eye(2, dtype=int)), u, v, r=4, seed=0) == expected

    def test_single_path_energy(self):
        instance = omv_build([[1, 0], [0, 0]])
        engine = omv_engine(instance, r=4, epsilon=EPS)
        assert omv_answer(instance, [1, 0], [1, 0], engine=engine) == 1
        assert engine.query(0, 1) == pytest.approx(engine.scale * 3.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_matrices_agree_with_boolean_product(self, seed):
        matrix = omv_matrix(6, seed=seed)
        instance = omv_build(matrix)
        rng = np.random.default_rng(seed)
        for _ in range(3):
            u = rng.integers(0, 2, size=6)
            v = rng.integers(0, 2, size=6)
            expected = int(bool(u.astype(bool) @ matrix.astype(bool) @ v.astype(bool)))
            assert omv_answer(instance, u, v, r=4, seed=seed) == expected

    def test_wrong_vector_length_raises(self):
        with pytest.raises(DimensionError):
            omv_answer(omv_build([[1]]), [1, 0], [1])

    def test_empty_matrix_raises(self):
        with pytest.raises(GraphError):
            omv_build(np.zeros((0, 3)))

    def test_zero_matrix_gives_zero(self):
        instance = omv_build([[0]])
        assert omv_answer(instance, [1], [1], r=4) == 0

    def test_reused_engine_rejects_narrower_selection(self):
        instance = omv_build(np.eye(2, dtype=int))
        engine = omv_engine(instance, r=4, epsilon=EPS)
        assert omv_answer(instance, [1, 0], [0, 0], engine=engine) == 0
        assert omv_answer(instance, [1, 0], [1, 0], engine=engine) == 1
        with pytest.raises(QueryError):
            omv_answer(instance, [0, 1], [0, 1], engine=engine)

    @pytest.mark.parametrize("seed", range(4))
    def test_energy_of_positive_answer_is_at_most_edge_count(self, seed):
        matrix = omv_matrix(8, seed=seed, density=0.3)
        instance = omv_build(matrix)
        m = instance.graph.num_edges
        rng = np.random.default_rng(seed)
        positives = 0
        for _ in range(4):
            u = rng.integers(0, 2, size=8)
            v = rng.integers(0, 2, size=8)
            engine = omv_engine(instance, r=6, epsilon=EPS, seed=seed)
            if omv_answer(instance, u, v, engine=engine):
                positives += 1
                assert 0.0 < engine.query(instance.source, instance.sink) <= m * (1 + EPS)
        full = omv_engine(instance, r=6, epsilon=EPS, seed=seed)
        if matrix.any():
            assert omv_answer(instance, np.ones(8), np.ones(8), engine=full) == 1
            assert full.query(instance.source, instance.sink) <= m * (1 + EPS)


class TestActivationAccounting:
    @pytest.mark.parametrize("seed", range(3))
    def test_full_activation_builds_match_region_membership(self, seed, grid64):
        engine = SubgraphEFlow(grid64, r=8, epsilon=EPS, seed=seed)
        membership = {v: set() for v in range(64)}
        for region_id in engine.division.region_ids():
            for edge_id in engine.division.regions[region_id].edges:
                edge = grid64.edge(edge_id)
                membership[edge.u].add(region_id)
                membership[edge.v].add(region_id)
        touched = [v for v in range(64) if membership[v]]
        boundary = [v for v in touched if len(membership[v]) >= 2]
        expected = len(touched) + sum(len(membership[v]) - 1 for v in boundary)

        order = [int(v) for v in np.random.default_rng(seed).permutation(64)]
        total = sum(engine.activate(v) for v in order)
        assert total == expected
        assert len(boundary) > 0
        assert total > 64
