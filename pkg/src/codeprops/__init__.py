"""
Code-property checkers: weight bands, minimum distance, entropy and minor predicates.
"""

from .checkers import check_min_distance, check_pgc, check_range_detector, min_distance
from .entropy import binary_entropy, gv_admissible
from .models import PgcParams, RangeDetectorParams, Verdict
from .sc_codes import check_mds, dist_definition_check, is_mds, is_sc_induced_code

__all__ = [
    'PgcParams',
    'RangeDetectorParams',
    'Verdict',
    'binary_entropy',
    'check_mds',
    'check_min_distance',
    'check_pgc',
    'check_range_detector',
    'dist_definition_check',
    'gv_admissible',
    'is_mds',
    'is_sc_induced_code',
    'min_distance',
]
