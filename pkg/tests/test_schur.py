import itertools
import math

import numpy as np
import pytest

from src.errors import GraphError
from src.graph import GraphMode, WeightedGraph, graph_union
from src.solvers import effective_resistance, resistance_matrix
from src.sparsify import (
    approx_schur,
    eliminate_vertex,
    exact_schur,
    sample_budget,
    schur_complement_matrix,
    sparsify_spectral,
    verify_spectral,
)
from src.utils.generators import random_planar_graph
from tests.conftest import cycle_graph, path_graph, random_connected_graph, random_tree


def terminal_block(graph: WeightedGraph, terminals):
    dense = graph.laplacian().dense()
    return dense[np.ix_(terminals, terminals)]


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(a, b, 1.0) for a, b in itertools.combinations(range(n), 2)])


class TestElimination:
    def test_series_path(self):
        graph = WeightedGraph.from_edges(3, [(0, 1, 2.0), (1, 2, 2.0)])
        result = eliminate_vertex(graph, 1)
        assert result.merged_weights() == {(0, 2): pytest.approx(1.0)}

    def test_star_becomes_triangle(self):
        star = WeightedGraph.from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])
        result = eliminate_vertex(star, 0)
        weights = result.merged_weights()
        assert set(weights) == {(1, 2), (1, 3), (2, 3)}
        for w in weights.values():
            assert w == pytest.approx(1.0 / 3.0)

    def test_single_neighbor_leaves_no_edges(self):
        result = eliminate_vertex(path_graph(2), 1)
        assert result.num_edges == 0

    def test_unknown_vertex_raises(self):
        with pytest.raises(GraphError):
            eliminate_vertex(path_graph(3), 7)

    def test_length_mode_is_rejected(self):
        with pytest.raises(GraphError):
            eliminate_vertex(path_graph(3, mode=GraphMode.LENGTH), 1)


class TestExactSchur:
    def test_all_terminals_returns_graph(self):
        graph = random_connected_graph(8, 6, seed=1)
        result = exact_schur(graph, range(8))
        assert result.order == []
        assert np.allclose(result.graph.laplacian().dense(), graph.laplacian().dense())

    def test_four_cycle_opposite_corners(self):
        result = exact_schur(cycle_graph(4), [0, 2])
        assert result.graph.merged_weights() == {(0, 2): pytest.approx(1.0)}
        assert effective_resistance(result.graph, 0, 2) == pytest.approx(1.0)

    def test_series_path_terminals(self):
        result = exact_schur(path_graph(3), [0, 2])
        assert result.graph.merged_weights() == {(0, 2): pytest.approx(0.5)}

    def test_terminal_free_components_are_dropped(self):
        graph = WeightedGraph.from_edges(5, [(0, 1, 1.0), (1, 2, 1.0), (3, 4, 1.0)])
        result = exact_schur(graph, [0, 2])
        assert {e.key for e in result.graph.edges()} == {(0, 2)}

    def test_empty_terminal_set_raises(self):
        with pytest.raises(GraphError):
            exact_schur(path_graph(3), [])

    def test_bad_order_raises(self):
        with pytest.raises(GraphError):
            exact_schur(path_graph(4), [0, 3], order=[1])

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_dense_schur_complement(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(6, 20))
        graph = random_connected_graph(n, int(rng.integers(0, 2 * n)), seed=seed)
        terminals = sorted(int(v) for v in rng.choice(n, size=int(rng.integers(2, min(8, n) + 1)), replace=False))
        result = exact_schur(graph, terminals)
        expected = schur_complement_matrix(graph.laplacian().dense(), terminals)
        assert np.allclose(terminal_block(result.graph, terminals), expected, rtol=1e-9, atol=1e-9)
        for w in result.graph.merged_weights().values():
            assert w > 0.0

    @pytest.mark.parametrize("seed", range(20))
    def test_terminal_resistances_are_preserved(self, seed):
        rng = np.random.default_rng(100 + seed)
        n = int(rng.integers(5, 50))
        graph = random_connected_graph(n, int(rng.integers(0, n)), seed=100 + seed)
        terminals = sorted(int(v) for v in rng.choice(n, size=min(n, int(rng.integers(2, 9))), replace=False))
        original = resistance_matrix(graph, terminals)
        reduced = resistance_matrix(exact_schur(graph, terminals).graph, terminals)
        assert np.allclose(reduced, original, rtol=1e-9)

    @pytest.mark.parametrize("seed", range(5))
    def test_elimination_order_does_not_matter(self, seed):
        graph = random_connected_graph(15, 12, seed=seed)
        terminals = [0, 5, 9]
        rest = [v for v in range(15) if v not in terminals]
        forward = exact_schur(graph, terminals, order=rest)
        backward = exact_schur(graph, terminals, order=list(reversed(rest)))
        assert np.allclose(
            forward.graph.laplacian().dense(), backward.graph.laplacian().dense(), rtol=1e-8, atol=1e-12
        )

    @pytest.mark.parametrize("seed", range(5))
    def test_terminal_quadratic_form_transfer(self, seed):
        rng = np.random.default_rng(seed)
        graph = random_connected_graph(20, 15, seed=seed)
        terminals = [1, 4, 8, 13, 17]
        demand = np.zeros(20)
        demand[terminals] = rng.standard_normal(len(terminals))
        demand[terminals] -= demand[terminals].mean()

        full = float(demand @ np.linalg.pinv(graph.laplacian().dense()) @ demand)
        block = terminal_block(exact_schur(graph, terminals).graph, terminals)
        d_k = demand[terminals]
        reduced = float(d_k @ np.linalg.pinv(block) @ d_k)
        assert reduced == pytest.approx(full, rel=1e-8)


class TestSpectral:
    def test_tree_is_returned_exactly(self):
        tree = random_tree(30, seed=2)
        result, certificate = sparsify_spectral(tree, 0.3, 0.1, seed=0)
        assert result.merged_weights() == pytest.approx(tree.merged_weights())
        assert not certificate.compressed

    def test_single_edge_weight_preserved(self):
        graph = WeightedGraph.from_edges(2, [(0, 1, 3.5)])
        result, _ = sparsify_spectral(graph, 0.2, 0.1, seed=0)
        assert result.merged_weights() == {(0, 1): pytest.approx(3.5, rel=1e-9)}

    def test_lenient_output_never_exceeds_budget(self):
        complete = complete_graph(30)
        result, certificate = sparsify_spectral(complete, 0.45, 0.5, seed=1, sample_constant=0.05, strict=False)
        assert certificate.compressed
        assert result.num_edges <= certificate.sample_count
        assert certificate.within_budget
        assert not certificate.within_epsilon
        assert certificate.measured_epsilon > 0.45

    def test_strict_mode_keeps_uncertified_component_exact(self):
        complete = complete_graph(30)
        result, certificate = sparsify_spectral(complete, 0.45, 0.5, seed=1, sample_constant=0.05, max_rounds=2)
        assert not certificate.compressed
        assert result.merged_weights() == pytest.approx(complete.merged_weights())
        assert certificate.within_epsilon and not certificate.within_budget
        assert certificate.rounds == 2

    def test_compressed_output_meets_epsilon(self):
        complete = complete_graph(240)
        result, certificate = sparsify_spectral(complete, 0.45, 0.1, seed=5, sample_constant=2.6, max_rounds=5)
        assert certificate.sample_count < complete.num_edges
        assert certificate.compressed
        assert certificate.within_budget and certificate.within_epsilon
        assert result.num_edges <= certificate.sample_count
        assert verify_spectral(complete, result, 0.45, trials=50, seed=2).passed

    def test_measured_epsilon_matches_quadratic_forms(self):
        complete = complete_graph(40)
        result, certificate = sparsify_spectral(complete, 0.45, 0.5, seed=3, sample_constant=0.3, strict=False)
        assert certificate.compressed
        report = verify_spectral(complete, result, certificate.measured_epsilon, trials=200, seed=4)
        assert report.passed

    def test_certificate_of_identity_copy(self):
        tree = random_tree(12, seed=1)
        _, certificate = sparsify_spectral(tree, 0.3, 0.1, seed=0)
        assert certificate.measured_epsilon == 0.0
        assert certificate.rounds == 0
        assert certificate.within_budget and certificate.within_epsilon

    def test_complete_graph_quadratic_form(self):
        complete = WeightedGraph.from_edges(20, [(a, b, 1.0) for a, b in itertools.combinations(range(20), 2)])
        result, _ = sparsify_spectral(complete, 0.3, 0.1, seed=3)
        rng = np.random.default_rng(0)
        exact, approx = complete.laplacian(), result.laplacian()
        good = 0
        for _ in range(100):
            x = rng.standard_normal(20)
            ratio = approx.quadratic_form(x) / exact.quadratic_form(x)
            good += 0.65 <= ratio <= 1.35
        assert good >= 95

    def test_rejects_epsilon_out_of_range(self, triangle):
        with pytest.raises(GraphError):
            sparsify_spectral(triangle, 0.5, 0.1, seed=0)

    def test_budget_formula(self):
        assert sample_budget(4, 0.5, 0.1, 10, 4.0) == math.ceil(4.0 * 4 * 4 * math.log(100))


class TestApproxSchur:
    def test_path_endpoints(self):
        graph = path_graph(6, weight=2.0)
        sparsifier, _ = approx_schur(graph, [0, 5], 0.2, 0.01, seed=0)
        assert effective_resistance(sparsifier, 0, 5) == pytest.approx(2.5)

    def test_edge_count_within_budget(self):
        graph = random_planar_graph(100, seed=4).graph
        terminals = list(range(0, 100, 10))
        sparsifier, certificate = approx_schur(graph, terminals, 0.2, 0.01, seed=4)
        n = len(graph.vertices_with_edges())
        assert certificate.sample_count == sample_budget(len(terminals), 0.2, 0.01, n, certificate.sample_constant)
        assert sparsifier.num_edges <= certificate.sample_count

    @pytest.mark.parametrize("seed", range(5))
    def test_terminal_resistances_close_to_exact(self, seed):
        instance = random_planar_graph(100, seed=seed, delete_fraction=0.1)
        graph = instance.graph
        terminals = sorted(int(v) for v in np.random.default_rng(seed).choice(100, size=10, replace=False))
        sparsifier, _ = approx_schur(graph, terminals, 0.2, 0.01, seed=seed)
        exact = resistance_matrix(graph, terminals)
        approx = resistance_matrix(sparsifier, terminals)
        for i, j in itertools.combinations(range(10), 2):
            if math.isinf(exact[i, j]):
                assert math.isinf(approx[i, j])
            else:
                assert exact[i, j] / 1.5 <= approx[i, j] <= 1.5 * exact[i, j]

    def test_forced_compression_keeps_guarantee(self):
        graph = random_planar_graph(200, seed=6).graph
        terminals = list(range(0, 200, 5))
        sparsifier, certificate = approx_schur(graph, terminals, 0.45, 0.1, seed=6, sample_constant=0.3)
        schur = exact_schur(graph, terminals).graph
        assert schur.num_edges > certificate.sample_count
        assert certificate.within_epsilon
        assert verify_spectral(schur, sparsifier, 0.45, trials=50, seed=1).passed

        exact = resistance_matrix(graph, terminals)
        approx = resistance_matrix(sparsifier, terminals)
        for i, j in itertools.combinations(range(len(terminals)), 2):
            if math.isinf(exact[i, j]):
                assert math.isinf(approx[i, j])
            else:
                assert exact[i, j] / 1.55 - 1e-9 <= approx[i, j] <= exact[i, j] / 0.55 + 1e-9

class TestVerifySpectral:
    def test_identical_graphs(self):
        graph = random_connected_graph(10, 8, seed=0)
        report = verify_spectral(graph, graph.copy(), 0.1)
        assert report.passed
        assert report.min_ratio == pytest.approx(1.0)
        assert report.max_ratio == pytest.approx(1.0)

    def test_uniform_scaling(self):
        graph = random_connected_graph(10, 8, seed=1)
        scaled = WeightedGraph.from_edges(10, [(e.u, e.v, e.weight * 1.1) for e in graph.edges()])
        report = verify_spectral(graph, scaled, 0.2)
        assert report.passed
        assert report.worst_ratio == pytest.approx(1.1)

    def test_one_heavy_edge_fails(self):
        graph = path_graph(5)
        heavy = WeightedGraph.from_edges(5, [(e.u, e.v, e.weight * (4.0 if e.edge_id == 2 else 1.0)) for e in graph.edges()])
        assert not verify_spectral(graph, heavy, 0.5).passed

    def test_union_of_part_sparsifiers_approximates_whole(self):
        graph = random_planar_graph(60, seed=5).graph
        ids = sorted(graph.edge_ids())
        parts = [graph.subgraph_from_edges(ids[: len(ids) // 2]), graph.subgraph_from_edges(ids[len(ids) // 2:])]
        sparsified = [sparsify_spectral(part, 0.3, 0.01, seed=i)[0] for i, part in enumerate(parts)]
        assert verify_spectral(graph, graph_union(sparsified), 0.3).passed
