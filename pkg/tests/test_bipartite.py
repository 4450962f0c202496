"""
Tests for bipartite graphs, degree trimming and disperser verification.
"""

import pytest

from src.bipartite import (
    BipartiteGraph,
    DisperserParams,
    graph_from_document,
    is_disperser,
    load_graph,
    rt00_degree,
    sample_left_regular,
    sample_verified_disperser,
    save_graph,
    trim_top_degrees,
)
from src.common.errors import BudgetExceeded, CircuitFormatError, DomainError


class TestDegreeFormula:
    """Left degree from the disperser theorem."""

    def test_known_values(self):
        assert rt00_degree(DisperserParams(16, 8, 8, 0.25)) == 10
        assert rt00_degree(DisperserParams(16, 12, 8, 0.25)) == 11
        assert rt00_degree(DisperserParams(256, 512, 32, 0.05)) == 126

    def test_invalid_params(self):
        with pytest.raises(DomainError):
            DisperserParams(16, 12, 0, 0.25)
        with pytest.raises(DomainError):
            DisperserParams(16, 12, 8, 1.0)


class TestGraphs:
    """Graph construction, documents and trimming."""

    def test_multi_edges_collapse(self):
        g = graph_from_document({'n_left': 2, 'n_right': 3, 'adj': [[2, 0, 2], [1]]})
        assert g.adjacency == ((0, 2), (1,))
        assert g.edge_count() == 3
        assert g.gamma([0, 1]) == [0, 1, 2]

    def test_bad_document(self):
        with pytest.raises(CircuitFormatError):
            graph_from_document({'n_left': 1, 'n_right': 2, 'adj': [[5]]})

    def test_sampling_is_deterministic(self):
        assert sample_left_regular(5, 7, 3, 42) == sample_left_regular(5, 7, 3, 42)
        assert all(len(row) <= 3 for row in sample_left_regular(5, 7, 3, 42).adjacency)

    def test_trim_removes_star(self):
        g = BipartiteGraph.from_lists(3, 3, [[0, 1], [0], [0, 2]])
        trimmed = trim_top_degrees(g, 1)
        assert trimmed.n_right == 2
        assert trimmed.adjacency == ((0,), (), (1,))

    def test_trim_ties_remove_lowest_index(self):
        g = BipartiteGraph.complete(2, 4)
        trimmed = trim_top_degrees(g, 2)
        assert trimmed.adjacency == ((0, 1), (0, 1))

    def test_trim_never_raises_degrees(self):
        g = sample_left_regular(20, 15, 4, 3)
        before = sorted(g.right_degrees().tolist(), reverse=True)
        after = trim_top_degrees(g, 5).right_degrees()
        assert after.max() <= before[5]
        assert trim_top_degrees(g, 5).left_degrees().max() <= 4

    def test_save_and_load(self, tmp_path):
        g = sample_left_regular(4, 6, 2, 1)
        path = tmp_path / 'g.json'
        save_graph(g, str(path))
        assert load_graph(str(path)) == g


class TestDisperserVerification:
    """Exhaustive checks and the sample-and-verify loop."""

    def test_complete_graph_disperses(self):
        verdict = is_disperser(BipartiteGraph.complete(3, 4), 1, 0.0)
        assert verdict.ok
        assert verdict.enumerated == 3

    def test_empty_graph_witness(self):
        verdict = is_disperser(BipartiteGraph.empty(3, 2), 2, 0.5)
        assert not verdict.ok
        assert verdict.counterexample == [0, 1]

    def test_vacuous_when_k_exceeds_left_side(self):
        verdict = is_disperser(BipartiteGraph.empty(3, 2), 4, 0.5)
        assert verdict.ok
        assert verdict.detail == {'vacuous': True}

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            is_disperser(BipartiteGraph.empty(30, 2), 15, 0.5, budget=10)

    def test_sampled_disperser_verifies(self):
        params = DisperserParams(16, 12, 8, 0.25)
        graph, run = sample_verified_disperser(params, seed=0, max_trials=50, jobs=1)
        assert run.trials_used <= 50
        assert is_disperser(graph, 8, 0.25).ok
        assert graph.left_degrees().max() <= rt00_degree(params)

    def test_replay_is_identical(self):
        params = DisperserParams(16, 8, 8, 0.25)
        first, _ = sample_verified_disperser(params, seed=7, max_trials=20, jobs=1)
        second, _ = sample_verified_disperser(params, seed=7, max_trials=20, jobs=1)
        assert first == second
