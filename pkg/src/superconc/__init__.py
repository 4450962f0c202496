"""
Superconcentrator graphs: flow verification, fixtures and conversion to codes.
"""

from .conversion import (
    ScConversionReport,
    non_sc_implies_not_code,
    sc_code_attempt,
    sc_success_rate,
    sc_to_circuit,
    success_lower_bound,
)
from .dag import LayeredDag, dag_from_document, load_dag, parse_edge_list, save_dag
from .fixtures import make_bottleneck, make_complete_bipartite_sc, make_parallel_paths, make_path, make_sandwich_sc
from .flow import is_superconcentrator, max_vertex_disjoint_paths, min_vertex_cut

__all__ = [
    'LayeredDag',
    'ScConversionReport',
    'dag_from_document',
    'is_superconcentrator',
    'load_dag',
    'make_bottleneck',
    'make_complete_bipartite_sc',
    'make_parallel_paths',
    'make_path',
    'make_sandwich_sc',
    'max_vertex_disjoint_paths',
    'min_vertex_cut',
    'non_sc_implies_not_code',
    'parse_edge_list',
    'save_dag',
    'sc_code_attempt',
    'sc_success_rate',
    'sc_to_circuit',
    'success_lower_bound',
]
