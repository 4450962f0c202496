"""
Tests for the inverse-Ackermann hierarchy and its property suite.
"""

import numpy as np
import pytest

from src.ack import HUGE, SaturatingNat, ackermann, ackermann_iterate, alpha, f_star, lambda_d, lambda_table
from src.ack.properties import (
    ceil_scaled_power,
    check_ackermann_inverse,
    check_ackermann_preimage,
    check_lambda_dd,
    check_lambda_self,
    check_monotone,
)
from src.common.errors import DomainError, NonDecreasingStep


class TestLambda:
    """Point values of lambda_d and alpha."""

    def test_base_levels(self):
        assert lambda_d(1, 17) == 4
        assert lambda_d(1, 16) == 4
        assert lambda_d(2, 16) == 4
        assert lambda_d(2, 17) == 5
        assert lambda_d(2, 1) == 0

    def test_higher_levels(self):
        assert lambda_d(4, 16) == 3
        assert lambda_d(4, 17) == 4
        assert lambda_d(6, 65536) == 3

    def test_alpha_switches_after_64(self):
        assert alpha(1) == 2
        assert alpha(64) == 2
        assert alpha(65) == 4

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            lambda_d(0, 10)
        with pytest.raises(DomainError):
            lambda_d(2, 0)
        with pytest.raises(DomainError):
            alpha(0)

    def test_f_star_rejects_non_decreasing_step(self):
        with pytest.raises(NonDecreasingStep):
            f_star(lambda m: m, 5)
        assert f_star(lambda m: m // 2, 16) == 4

    def test_table_matches_pointwise(self):
        for d in (1, 2, 3, 4, 5, 6):
            table = lambda_table(d, 300)
            expected = np.array([lambda_d(d, n) for n in range(1, 301)])
            assert np.array_equal(table[1:], expected), f"lambda_table disagrees at d={d}"


class TestAckermann:
    """Saturating Ackermann values."""

    def test_small_values(self):
        assert ackermann(0, 5) == 10
        assert ackermann(1, 5) == 32
        assert ackermann(2, 1) == 2
        assert ackermann(2, 3) == 16
        assert ackermann(2, 4) == 65536

    def test_saturates(self):
        assert ackermann(2, 5) is HUGE
        assert ackermann(1, 63).is_huge
        assert ackermann(3, HUGE).is_huge

    def test_iterate(self):
        assert ackermann_iterate(0, 3, 1) == 8
        assert ackermann_iterate(1, 0, 7) == 7

    def test_saturating_arithmetic(self):
        assert SaturatingNat.of(2 ** 64) is HUGE
        assert HUGE + 1 is HUGE
        assert HUGE * 0 == 0
        assert HUGE > 10 ** 30
        assert SaturatingNat(3) < 4
        assert HUGE.to_json() == 'HUGE'
        with pytest.raises(DomainError):
            SaturatingNat.of(-1)

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            ackermann(-1, 2)
        with pytest.raises(DomainError):
            ackermann(1, 0)


class TestPropertySuite:
    """The named properties hold at small widths."""

    def test_inverse_and_preimage(self):
        assert check_ackermann_inverse().ok
        assert check_ackermann_preimage(d_max=32).ok

    def test_self_bound(self):
        assert check_lambda_self().ok

    def test_lambda_dd_holds_from_eight(self):
        result = check_lambda_dd(d_lo=8, d_hi=20)
        assert result.ok
        assert result.checked == 13

    def test_monotone(self):
        assert check_monotone(n_max=512, d_max=6).ok

    def test_ceil_scaled_power(self):
        assert ceil_scaled_power(1, 2) == 4
        assert ceil_scaled_power(1, 1) == 2
        assert ceil_scaled_power(1, 3) == 9
        with pytest.raises(DomainError):
            ceil_scaled_power(0, 2)
