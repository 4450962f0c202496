"""
Tests for the lower-bound arithmetic and the depth-chain replay.
"""

from fractions import Fraction

import pytest

from src.bounds import (
    LowerBoundParams,
    check_fstar_lemma,
    densely_regular_params,
    depth_chain_certificate,
    depth_lower_bound,
    edge_lower_bound_check,
    frontier_frame,
    lb_depth1,
    lb_refined,
    lb_theorem_form,
)
from src.common.errors import DomainError


class TestClosedForms:
    """Exact lower-bound formulas."""

    def test_depth_one(self):
        assert lb_depth1(1024, 4, 0.5, 0.25) == 128
        with pytest.raises(DomainError):
            lb_depth1(1024, 4, 0, 0.25)

    def test_refined_even_depth(self):
        params = LowerBoundParams(n=1024, d=2, r=16, eps=0.5, delta=0.25)
        assert lb_refined(params) == Fraction(128, 27)

    def test_theorem_form(self):
        params = LowerBoundParams(n=1024, d=2, r=16, eps=0.5, delta=0.25)
        assert lb_theorem_form(params) == pytest.approx(64 / 54)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            LowerBoundParams(n=16, d=2, r=32, eps=0.5, delta=0.25)
        with pytest.raises(ValueError):
            LowerBoundParams(n=16, d=0, r=4, eps=0.5, delta=0.25)

    def test_edge_floor(self):
        assert edge_lower_bound_check(10, 0.25, 0.5, 16) == {'wires': 10, 'floor': 4, 'ok': True}
        assert not edge_lower_bound_check(3, 0.25, 0.5, 16)['ok']


class TestDenseRegularity:
    """Dummy-input conversion."""

    def test_exact_rate(self):
        converted = densely_regular_params(100, Fraction(1, 3), Fraction(1, 4))
        assert converted['N'] == 300
        assert converted['rho_prime'] == Fraction(1, 3)
        assert converted['eps'] == Fraction(1, 12)
        assert converted['mu'] == Fraction(1, 300)

    def test_rounded_rate(self):
        converted = densely_regular_params(100, 0.3, 0.25)
        assert converted['N'] == 333
        assert converted['rho_prime'] == Fraction(100, 333)

    def test_ranges(self):
        with pytest.raises(DomainError):
            densely_regular_params(100, 1.5, 0.25)
        with pytest.raises(DomainError):
            densely_regular_params(100, 0.5, 0.5)


class TestDepthBound:
    """alpha-based depth lower bound, the f* lemma and the chain replay."""

    def test_depth_lower_bound(self):
        assert depth_lower_bound(64) == 1
        assert depth_lower_bound(65) == 2
        with pytest.raises(DomainError):
            depth_lower_bound(0)

    def test_frontier_frame(self):
        frame = frontier_frame([64, 65])
        assert list(frame.columns) == ['n', 'depth_lb', 'alpha']
        assert frame['depth_lb'].tolist() == [1, 2]
        assert frame['alpha'].tolist() == [2, 4]

    def test_fstar_lemma(self):
        verdict = check_fstar_lemma(65536)
        assert verdict.ok
        assert verdict.detail['max_n'] == 65536

    @pytest.mark.slow
    def test_fstar_lemma_to_a_million(self):
        assert check_fstar_lemma(10 ** 6).ok

    def test_fstar_lemma_range(self):
        with pytest.raises(DomainError):
            check_fstar_lemma(0)

    def test_chain_certificate(self):
        report = depth_chain_certificate(64, 0.5, 0.25, 11)
        assert report['N'] == 128
        assert len(report['depths']) == 16
        assert report['least_not_excluded'] == 1
        assert report['agrees']
        assert report['sound']
        for entry in report['depths']:
            if not entry['excluded']:
                assert entry['steps_hold']
                assert entry['chain_closed'] == entry['linked']

    def test_chain_unlinked_below_threshold(self):
        report = depth_chain_certificate(1024, Fraction(1, 2), Fraction(1, 4), 2)
        assert report['K'] == '1728'
        assert report['lambda_dd_threshold'] == 4
        assert report['unlinked_depths'] == [1, 2, 3]
        first = report['depths'][0]
        assert not first['linked']
        assert not first['chain_closed']
        link = next(r for r in first['relations'] if r['name'] == 'lambda_d(M) <= d')
        assert not link['applicable']
        assert link['lhs'] == 49
        assert report['closed_depths'] == list(range(4, 17))

    @pytest.mark.parametrize('n', [65, 1024, 2 ** 20])
    def test_chain_at_alpha_four(self, n):
        report = depth_chain_certificate(n, Fraction(1, 2), Fraction(1, 4), 2)
        assert report['depth_lower_bound'] == 2
        assert report['least_not_excluded'] == 1
        assert not report['agrees']
        assert report['consistent']
        assert report['sound']

    def test_chain_certificate_domain(self):
        with pytest.raises(DomainError):
            depth_chain_certificate(0, 0.5, 0.25, 11)
