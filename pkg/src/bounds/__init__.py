"""
Lower-bound arithmetic: densely regular bounds, the f* lemma and the depth lower bound.
"""

from .depth_chain import chain_relations, depth_chain_certificate, lambda_star
from .lower_bounds import (
    DEFAULT_OMEGA,
    LowerBoundParams,
    check_fstar_lemma,
    densely_regular_params,
    depth_lower_bound,
    edge_lower_bound_check,
    frontier_frame,
    lb_depth1,
    lb_refined,
    lb_theorem_form,
)

__all__ = [
    'DEFAULT_OMEGA',
    'LowerBoundParams',
    'chain_relations',
    'check_fstar_lemma',
    'densely_regular_params',
    'depth_chain_certificate',
    'depth_lower_bound',
    'edge_lower_bound_check',
    'frontier_frame',
    'lambda_star',
    'lb_depth1',
    'lb_refined',
    'lb_theorem_form',
]
