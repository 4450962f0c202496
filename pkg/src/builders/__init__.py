"""
Sample-and-verify builders for the constructive pipeline and the exact size ledger.
"""

from .amplifier import Amplifier, AmplifierPlan, build_amplifier, plan_amplifier
from .base_builder import Acceptance, BaseBuilder, BuildResult, accept_layer, layer_from_graph
from .base_pgc import BasePgcSearch, search_base_pgc
from .booster import BoosterParams, BoosterPlan, RateBooster, build_rate_booster, plan_booster, select_booster_eps
from .composition import PgcComposer, compose_pgcs, dyadic_bands
from .condenser import CondenserSearch, condenser_window, search_condenser
from .constants import LITERAL_PROFILE, SCALED_PROFILE, ConstantTable, ScaleProfile, load_constants, profile_for
from .good_code import GoodCodeBuilder, build_good_code
from .ledger import BoundLedger, LedgerNode, derive_constants, ledger_grid, member_ledger, upper_bound_ledger
from .reduction import PgcReduction, build_handy, reduce_pgc

__all__ = [
    'Acceptance',
    'Amplifier',
    'AmplifierPlan',
    'BaseBuilder',
    'BasePgcSearch',
    'BoosterParams',
    'BoosterPlan',
    'BoundLedger',
    'BuildResult',
    'CondenserSearch',
    'ConstantTable',
    'GoodCodeBuilder',
    'LITERAL_PROFILE',
    'LedgerNode',
    'PgcComposer',
    'PgcReduction',
    'RateBooster',
    'SCALED_PROFILE',
    'ScaleProfile',
    'accept_layer',
    'build_amplifier',
    'build_good_code',
    'build_handy',
    'build_rate_booster',
    'compose_pgcs',
    'condenser_window',
    'derive_constants',
    'dyadic_bands',
    'layer_from_graph',
    'ledger_grid',
    'load_constants',
    'member_ledger',
    'plan_amplifier',
    'plan_booster',
    'profile_for',
    'reduce_pgc',
    'search_base_pgc',
    'search_condenser',
    'select_booster_eps',
    'upper_bound_ledger',
]
