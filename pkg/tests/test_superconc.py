"""
Tests for layered DAGs, the superconcentrator check and the conversion to codes.
"""

from fractions import Fraction

import networkx as nx
import pytest

from src.circuit import path_sum_entry
from src.codeprops.checkers import min_distance
from src.codeprops.sc_codes import check_mds
from src.common.errors import CircuitFormatError, DomainError, PreconditionUnmet
from src.superconc import (
    LayeredDag,
    is_superconcentrator,
    load_dag,
    make_bottleneck,
    make_complete_bipartite_sc,
    make_parallel_paths,
    make_path,
    make_sandwich_sc,
    max_vertex_disjoint_paths,
    min_vertex_cut,
    non_sc_implies_not_code,
    parse_edge_list,
    save_dag,
    sc_code_attempt,
    sc_success_rate,
    sc_to_circuit,
    success_lower_bound,
)
from src.superconc.fixtures import remove_edge

BOTTLENECK_TEXT = """
# two inputs funnel through vertex 2
layers 2 1 2
0 2
1 2
2 3
2 4
2 4
"""


class TestLayeredDag:
    """Construction and the two file formats."""

    def test_edges_collapse_and_sort(self):
        g = LayeredDag.from_edges([2, 1], [(0, 1, 1, 0), (0, 0, 1, 0), (0, 1, 1, 0)])
        assert g.edges == (((0, 0), (1, 0)), ((0, 1), (1, 0)))

    def test_backward_edge_rejected(self):
        with pytest.raises(DomainError):
            LayeredDag.from_edges([2, 2], [(1, 0, 0, 0)])

    def test_depth(self):
        assert make_path(2).depth() == 2
        assert make_complete_bipartite_sc(2, 3).depth() == 1
        assert LayeredDag.from_edges([1, 1, 1], [(0, 0, 2, 0)]).depth() == 1

    def test_edge_list_text(self):
        assert parse_edge_list(BOTTLENECK_TEXT) == make_bottleneck()

    def test_edge_list_needs_header(self):
        with pytest.raises(CircuitFormatError):
            parse_edge_list("0 1\n")
        with pytest.raises(CircuitFormatError):
            parse_edge_list("layers 1 1\n0 7\n")

    def test_save_and_load(self, tmp_path):
        g = make_sandwich_sc(2, 3, 2)
        path = tmp_path / 'g.json'
        save_dag(g, str(path))
        assert load_dag(str(path)) == g
        text_path = tmp_path / 'g.txt'
        text_path.write_text(BOTTLENECK_TEXT, encoding='utf-8')
        assert load_dag(str(text_path)) == make_bottleneck()


class TestSuperconcentratorCheck:
    """Exhaustive pair enumeration with cut certificates."""

    def test_complete_bipartite(self):
        verdict = is_superconcentrator(make_complete_bipartite_sc(2, 3))
        assert verdict.ok
        assert verdict.enumerated == 9

    def test_single_path(self):
        assert is_superconcentrator(make_path(2)).ok

    def test_bottleneck_fails_on_pairs(self):
        verdict = is_superconcentrator(make_bottleneck())
        assert not verdict.ok
        witness = verdict.counterexample
        assert (witness['X'], witness['Y'], witness['k'], witness['paths']) == ([0, 1], [0, 1], 2, 1)
        assert witness['cut'] == [[1, 0]]
        assert verdict.enumerated == 5

    def test_sandwich_width(self):
        assert is_superconcentrator(make_sandwich_sc(3, 5, 4)).ok
        verdict = is_superconcentrator(make_sandwich_sc(3, 2, 4))
        assert not verdict.ok
        assert verdict.counterexample['k'] == 3
        assert verdict.counterexample['cut'] == [[1, 0], [1, 1]]

    def test_disconnected_pair_has_empty_cut(self):
        verdict = is_superconcentrator(make_parallel_paths(2, 3))
        assert not verdict.ok
        assert verdict.counterexample['X'] == [0]
        assert verdict.counterexample['Y'] == [1]
        assert verdict.counterexample['cut'] == []

    def test_removed_edge_breaks_property(self):
        g = remove_edge(make_complete_bipartite_sc(2, 2), (0, 0), (1, 0))
        assert not is_superconcentrator(g).ok

    def test_cut_separates(self):
        g = make_sandwich_sc(4, 2, 4)
        X, Y = [0, 1, 3], [0, 2, 3]
        cut = min_vertex_cut(g, X, Y)
        assert len(cut) == max_vertex_disjoint_paths(g, X, Y) == 2
        graph = nx.DiGraph(list(g.edges))
        graph.remove_nodes_from(cut)
        for i in X:
            for j in Y:
                assert not nx.has_path(graph, (0, i), (g.last_layer, j))

    def test_terminals_validated(self):
        with pytest.raises(DomainError):
            max_vertex_disjoint_paths(make_bottleneck(), [], [0])
        with pytest.raises(DomainError):
            max_vertex_disjoint_paths(make_bottleneck(), [0], [5])


class TestConversion:
    """Random coefficients turn superconcentrators into codes."""

    def test_success_lower_bound(self):
        assert success_lower_bound(2, 3, 1, 10007) == 1 - Fraction(12, 10007)
        assert success_lower_bound(4, 4, 3, 7) == 0

    @pytest.mark.parametrize('n, m, seeds', [(2, 4, 12), (3, 4, 6)])
    def test_accepted_codes_are_mds(self, n, m, seeds):
        g = make_complete_bipartite_sc(n, m)
        accepted = 0
        for seed in range(seeds):
            if not sc_code_attempt(g, 101, seed).success:
                continue
            accepted += 1
            circuit = sc_to_circuit(g, 101, seed)
            assert check_mds(circuit.generator_matrix()).ok
            assert min_distance(circuit) == m - n + 1
        assert accepted >= 1

    def test_circuit_matches_path_sums(self):
        g = make_sandwich_sc(3, 4, 3)
        circuit = sc_to_circuit(g, 101, seed=5)
        assert circuit.depth == 2
        for i in range(3):
            for j in range(3):
                assert path_sum_entry(circuit, i, j) == circuit.generator_rows[i][j]

    def test_conversion_is_seeded(self):
        g = make_complete_bipartite_sc(3, 3)
        assert sc_to_circuit(g, 13, seed=4) == sc_to_circuit(g, 13, seed=4)

    def test_single_attempt_report(self):
        report = sc_code_attempt(make_complete_bipartite_sc(2, 3), 10007, seed=1)
        assert report.depth == 1
        assert report.wires == 6
        assert report.to_dict()['lower_bound_on_success_prob'] == str(1 - Fraction(12, 10007))

    def test_success_rate_on_large_field(self):
        summary = sc_success_rate(make_complete_bipartite_sc(2, 3), 10007, seeds=20, seed=0)
        assert summary['successes'] >= 18

    def test_bottleneck_never_gives_code(self):
        verdict = non_sc_implies_not_code(make_bottleneck(), 101, trials=50, seed=0)
        assert verdict.ok
        assert verdict.detail['cut_size'] == 1
        assert verdict.detail['max_rank'] <= 1

    def test_needs_non_superconcentrator(self):
        with pytest.raises(PreconditionUnmet):
            non_sc_implies_not_code(make_complete_bipartite_sc(2, 3), 101, trials=5, seed=0)
