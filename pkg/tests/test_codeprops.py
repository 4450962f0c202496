"""
Tests for the code-property checkers, entropy arithmetic and minor predicates.
"""

import itertools

import pytest

from src.circuit import LinearCircuit
from src.codeprops import (
    PgcParams,
    RangeDetectorParams,
    binary_entropy,
    check_mds,
    check_min_distance,
    check_pgc,
    check_range_detector,
    dist_definition_check,
    gv_admissible,
    is_sc_induced_code,
    min_distance,
)
from src.codeprops.checkers import band_size, min_distance_with_witness
from src.codeprops.entropy import amplifier_exponent, composition_exponent, gv_max_delta
from src.codeprops.sc_codes import minor_count
from src.common.errors import BudgetExceeded, DomainError
from src.gf import GF2, Matrix


def _depth_one(m: Matrix) -> LinearCircuit:
    """Circuit whose output j is column j of m applied to the inputs."""
    layer = [[[0, i, m[i, j]] for i in range(m.rows)] for j in range(m.cols)]
    return LinearCircuit.build(m.field, m.rows, [layer], [[1, j] for j in range(m.cols)])


class TestEntropy:
    """Binary entropy and the two failure exponents."""

    def test_entropy_values(self):
        assert binary_entropy(0.5) == pytest.approx(1.0)
        assert binary_entropy(0) == 0.0
        with pytest.raises(DomainError):
            binary_entropy(1.5)

    def test_exponents_clear_their_thresholds(self):
        assert composition_exponent() == pytest.approx(1.8257, abs=1e-4)
        assert amplifier_exponent() == pytest.approx(0.3768, abs=1e-4)
        assert composition_exponent() >= 1.8
        assert amplifier_exponent() >= 0.37

    def test_gilbert_varshamov(self):
        assert gv_admissible(0.25, 0.15)
        assert not gv_admissible(0.5, 0.15)
        assert binary_entropy(gv_max_delta(0.5)) == pytest.approx(0.5, abs=1e-9)


class TestBandCheckers:
    """Exhaustive PGC, range-detector and distance checks."""

    def test_pgc_finds_zero_codeword(self, xor_circuit):
        verdict = check_pgc(xor_circuit, PgcParams(n_in=3, n_out=2, r=1, s=3, w_min=1))
        assert not verdict.ok
        assert verdict.counterexample == '111'
        assert verdict.enumerated == 7

    def test_pgc_holds_below_weight_three(self, xor_circuit):
        verdict = check_pgc(xor_circuit, PgcParams(n_in=3, n_out=2, r=1, s=2, w_min=1))
        assert verdict.ok
        assert verdict.enumerated == band_size(3, 1, 2) == 6

    def test_pgc_shape_mismatch(self, xor_circuit):
        with pytest.raises(DomainError):
            check_pgc(xor_circuit, PgcParams(n_in=4, n_out=2, r=1, s=2, w_min=1))

    def test_pgc_budget(self, xor_circuit):
        with pytest.raises(BudgetExceeded):
            check_pgc(xor_circuit, PgcParams(n_in=3, n_out=2, r=1, s=3, w_min=1), budget=3)

    def test_params_reject_bad_band(self):
        with pytest.raises(ValueError):
            PgcParams(n_in=4, n_out=8, r=3, s=2, w_min=1)

    def test_range_detector(self):
        identity = LinearCircuit.identity(GF2, 3)
        assert check_range_detector(identity, RangeDetectorParams(m_in=3, n_out=3, ell=1, k=2, r=1, s=2)).ok
        verdict = check_range_detector(identity, RangeDetectorParams(m_in=3, n_out=3, ell=1, k=3, r=1, s=2))
        assert not verdict.ok
        assert verdict.detail['output_weight'] == 3
        assert RangeDetectorParams(m_in=3, n_out=3, ell=1, k=2, r=1).s == 3

    def test_min_distance(self, xor_circuit):
        identity = LinearCircuit.identity(GF2, 3)
        assert min_distance(xor_circuit) == 0
        assert min_distance(identity) == 1
        verdict = check_min_distance(identity, 2)
        assert not verdict.ok
        assert verdict.counterexample == [1, 0, 0]
        assert verdict.enumerated == 7

    def test_min_distance_over_gf5(self, gf5):
        code = _depth_one(Matrix.from_rows(gf5, [[1, 1, 1], [1, 2, 3]]))
        distance, witness = min_distance_with_witness(code)
        assert distance == 2
        assert sum(1 for v in code.eval(witness) if v) == 2


class TestMinorPredicates:
    """Superconcentrator-induced codes and MDS matrices."""

    def test_zero_matrix_witness(self, gf5):
        verdict = is_sc_induced_code(Matrix.from_rows(gf5, [[0]]))
        assert not verdict.ok
        assert verdict.counterexample == {'X': [0], 'Y': [0]}

    def test_singular_two_by_two(self, gf5):
        m = Matrix.from_rows(gf5, [[1, 1], [1, 1]])
        verdict = is_sc_induced_code(m)
        assert not verdict.ok
        assert verdict.enumerated == 5
        assert not dist_definition_check(m).ok

    def test_cauchy_like_matrix_passes(self, gf5):
        m = Matrix.from_rows(gf5, [[1, 1, 1], [1, 2, 3]])
        assert is_sc_induced_code(m).ok
        assert dist_definition_check(m).ok
        assert check_mds(m).ok

    def test_equivalence_on_gf5_family(self, gf5):
        for entries in itertools.islice(itertools.product(range(5), repeat=6), 600):
            m = Matrix(gf5, (entries[:3], entries[3:]))
            assert is_sc_induced_code(m).ok == dist_definition_check(m).ok, f"disagreement on {entries}"

    def test_mds_shape(self, gf5):
        assert not check_mds(Matrix.from_rows(gf5, [[1], [2]])).ok
        assert minor_count(2, 3) == 9

    def test_minor_budget(self, gf5):
        with pytest.raises(BudgetExceeded):
            is_sc_induced_code(Matrix.from_rows(gf5, [[1, 2, 3], [4, 1, 2]]), budget=4)
