"""
Inverse-Ackermann hierarchy, Ackermann function and their property suite.
"""

from .inverse_ackermann import (
    HUGE,
    SaturatingNat,
    ackermann,
    ackermann_iterate,
    alpha,
    f_star,
    lambda_d,
    lambda_table,
)

__all__ = [
    'HUGE',
    'SaturatingNat',
    'ackermann',
    'ackermann_iterate',
    'alpha',
    'f_star',
    'lambda_d',
    'lambda_table',
]
