"""
Tests for the sample-and-verify builders and the exact wire ledger.
"""

from fractions import Fraction

import pytest

from src.builders import (
    SCALED_PROFILE,
    BoosterParams,
    ConstantTable,
    RateBooster,
    build_amplifier,
    build_good_code,
    build_handy,
    compose_pgcs,
    dyadic_bands,
    ledger_grid,
    member_ledger,
    plan_amplifier,
    plan_booster,
    reduce_pgc,
    search_base_pgc,
    search_condenser,
    select_booster_eps,
    upper_bound_ledger,
)
from src.codeprops.checkers import check_pgc, check_range_detector, min_distance
from src.codeprops.models import PgcParams, RangeDetectorParams
from src.common.errors import DomainError, FaninUnbounded, GvViolation, PreconditionUnmet, TrialsExhausted

BUILD_KWARGS = {'profile': SCALED_PROFILE, 'jobs': 1, 'max_trials': 300}


class TestRateBooster:
    """Booster planning and the two acceptance modes used at desk scale."""

    def test_params_need_entropy_margin(self):
        with pytest.raises(DomainError):
            BoosterParams(delta=1, c=2, gamma=0.3)

    def test_eps_selection(self):
        eps, eps_prime, exponent = select_booster_eps(6, 1 / 6)
        assert eps == 0.125
        assert eps_prime == pytest.approx(7 / 48)
        assert exponent > 1

    def test_plan_sizes(self):
        plan = plan_booster(BoosterParams(delta=1, c=6, gamma=1 / 6), n_in=8, unit=2)
        assert plan.n_out == 12
        assert plan.n_right == 14
        assert plan.k == 2

    def test_band_acceptance(self):
        params = BoosterParams(delta=1, c=6, gamma=1 / 6)
        result = RateBooster(params, 8, 2, seed=0, **BUILD_KWARGS).build()
        assert result.report['acceptance'] == 'band'
        assert result.circuit.depth == 1
        assert result.circuit.num_outputs == 12
        band = PgcParams(n_in=8, n_out=12, r=2, s=8, w_min=2)
        assert check_pgc(result.circuit, band).ok

    def test_input_set_acceptance(self):
        words = [0b1111, 0xFF00, 0xFFFF, 0b1010101010101010]
        params = BoosterParams(delta=2, c=6, gamma=0.25)
        result = RateBooster(params, 16, 2, seed=3, inputs=words, **BUILD_KWARGS).build()
        assert result.report['acceptance'] == 'inputs'
        for word in words:
            assert result.circuit.encode_bits(word).bit_count() >= 3
        assert result.circuit.output_fanin() <= result.report['plan']['fanin_bound']


class TestShallowBuilders:
    """Amplifier, condenser and base PGC searches."""

    def test_amplifier_is_range_detector(self):
        result = build_amplifier(8, 24, seed=0, **BUILD_KWARGS)
        circuit = result.circuit
        assert (circuit.num_inputs, circuit.num_outputs, circuit.depth) == (8, 24, 1)
        assert check_range_detector(circuit, RangeDetectorParams(m_in=8, n_out=24, ell=1, k=8, r=3)).ok

    def test_amplifier_needs_room(self):
        with pytest.raises(DomainError):
            plan_amplifier(8, 20)

    def test_condenser(self):
        result = search_condenser(16, 6, 1, seed=0, **BUILD_KWARGS)
        assert result.circuit.num_outputs == 2
        assert result.circuit.size() <= 6 * 16
        assert result.report['verdict']['ok']

    def test_condenser_preconditions(self):
        with pytest.raises(PreconditionUnmet):
            search_condenser(16, 5, 1, seed=0, **BUILD_KWARGS)
        with pytest.raises(PreconditionUnmet):
            search_condenser(16, 6, 2, seed=0, **BUILD_KWARGS)

    def test_condenser_size_budget_resamples(self):
        kwargs = {**BUILD_KWARGS, 'max_trials': 3}
        with pytest.raises(TrialsExhausted) as excinfo:
            search_condenser(16, 6, 1, seed=0, size_budget=1, **kwargs)
        assert excinfo.value.statistics['failures'] == {'wire budget': 3}

    def test_base_pgc(self):
        result = search_base_pgc(6, 2, 4, 1, seed=1, **BUILD_KWARGS)
        assert result.circuit.num_outputs == 24
        assert check_pgc(result.circuit, SCALED_PROFILE.pgc_params(6, 2, 4)).ok

    def test_base_pgc_wire_budget_resamples(self):
        kwargs = {**BUILD_KWARGS, 'max_trials': 5}
        with pytest.raises(TrialsExhausted) as excinfo:
            search_base_pgc(6, 2, 4, 1, seed=1, wire_budget=1, **kwargs)
        assert excinfo.value.statistics['failures'] == {'wire budget': 5}
        result = search_base_pgc(6, 2, 4, 1, seed=1, wire_budget=144, **BUILD_KWARGS)
        assert result.circuit.size() <= 144
        assert result.report['wire_budget'] == 144
        assert 'wire budget' not in result.report['failures']


class TestComposition:
    """Composition, reduction and the handy circuit."""

    def test_compose_adjacent_bands(self):
        n = 10
        members = [search_base_pgc(n, lo, hi, 1, seed=index, **BUILD_KWARGS)
                   for index, (lo, hi) in enumerate([(1, 2), (2, 4)])]
        params = [SCALED_PROFILE.pgc_params(n, 1, 2), SCALED_PROFILE.pgc_params(n, 2, 4)]
        result = compose_pgcs([m.circuit for m in members], params, 'new_layer', seed=5, **BUILD_KWARGS)
        assert result.circuit.depth == 2
        assert check_pgc(result.circuit, SCALED_PROFILE.pgc_params(n, 1, 4)).ok
        assert result.report['members'] == 2

    def test_collapse_needs_fanin_bounds(self):
        member = search_base_pgc(10, 1, 2, 1, seed=0, **BUILD_KWARGS)
        params = [SCALED_PROFILE.pgc_params(10, 1, 2)] * 2
        with pytest.raises(FaninUnbounded):
            compose_pgcs([member.circuit] * 2, params, 'merge_and_collapse', seed=0, **BUILD_KWARGS)

    def test_dyadic_bands(self):
        assert dyadic_bands(1, 10) == [(1, 2), (2, 4), (4, 8), (8, 10)]

    def test_reduction(self):
        inner = search_base_pgc(3, 1, 3, 1, seed=2, **BUILD_KWARGS)
        result = reduce_pgc(18, 6, 1, None, inner.circuit, seed=4, **BUILD_KWARGS)
        assert result.circuit.depth == inner.circuit.depth + 2
        assert result.circuit.num_outputs == SCALED_PROFILE.n_out(18)
        assert result.report['verdict']['ok']

    def test_handy_circuit(self):
        result = build_handy(36, 36, seed=0, **BUILD_KWARGS)
        assert result.circuit.depth == 4
        assert result.report['handy']['shrink'] == 6
        assert result.report['handy']['s'] == 1.0
        assert result.report['verdict']['ok']


class TestGoodCode:
    """End-to-end desk construction."""

    @pytest.mark.integration
    def test_small_good_code(self):
        result = build_good_code(10, 0.25, 0.15, 4, seed=0, **BUILD_KWARGS)
        assert result.circuit.num_outputs == 40
        assert result.circuit.depth <= 4
        assert result.report['min_distance'] >= 6
        assert min_distance(result.circuit) == result.report['min_distance']
        assert result.report['collapse_preserved']

    def test_rejects_rates_beyond_gilbert_varshamov(self):
        with pytest.raises(GvViolation):
            build_good_code(10, 0.6, 0.15, 4, seed=0, **BUILD_KWARGS)


class TestLedger:
    """Exact replay of the wire count."""

    def test_depth_four_base_value(self):
        ledger = upper_bound_ledger(1024, 4)
        assert ledger.total == 12288
        assert ledger.within_bound
        assert len(ledger.to_frame()) == 2

    @pytest.mark.parametrize('d', [6, 8])
    def test_higher_depths_are_linear(self, d):
        for n in (2 ** 10, 2 ** 16):
            ledger = upper_bound_ledger(n, d)
            assert ledger.c == 11
            assert ledger.total == 11 * n
            assert ledger.within_bound

    def test_tree_cites_each_lemma(self):
        n = 2 ** 16
        ledger = upper_bound_ledger(n, 6)
        assert ledger.h == 1
        assert [(child.node, child.lemma) for child in ledger.root.children] == [
            ('member_1', 'ub_d2'), ('composition', 'composition')]
        assert ledger.root.children[1].wires == 2 * n
        member = ledger.member
        assert [child.lemma for child in member.children] == ['reduction', 'handy', 'composition']
        assert [child.lemma for child in member.children[0].children] == ['condenser', 'ub_main', 'amplifier']
        assert member.wires == Fraction(41, 2) * n
        assert ledger.member_within_bound
        for tree in (ledger.root, member):
            for node in tree.walk():
                if node.children:
                    assert node.wires == sum(child.wires for child in node.children)
        assert ledger.root.wires == ledger.total
        assert len(ledger.to_frame()) == 10
        assert 'reduction' not in [node.lemma for node in ledger.root.walk()]

    def test_member_bands(self):
        member = member_ledger('m', 1024, 3, 6, Fraction(11), ConstantTable())
        assert member.params['r_hi'] == 'HUGE'
        low = member.children[0]
        assert low.children[1].params == {'n': 85, 'depth': 4, 'lambda': 6}
        assert low.children[0].wires == low.children[2].wires == 512
        assert member.wires <= 2 * 11 * 1024
        with pytest.raises(DomainError):
            member_ledger('m', 1024, 2, 6, Fraction(11), ConstantTable())

    def test_custom_constants(self):
        ct = ConstantTable(c0=8, c3=Fraction(1, 2))
        ledger = upper_bound_ledger(1024, 6, ct)
        assert ledger.total == Fraction(1, 2) * 1024 * 9 + 2 * 1024

    def test_c0_floor(self):
        with pytest.raises(ValueError):
            ConstantTable(c0=5)

    def test_invalid_depth(self):
        with pytest.raises(DomainError):
            upper_bound_ledger(1024, 5)

    def test_grid(self):
        frame = ledger_grid([2 ** 10, 2 ** 12], [4, 6])
        assert len(frame) == 4
        assert frame['within_bound'].all()
