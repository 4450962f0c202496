"""
Random bipartite graphs and disperser verification.
"""

from .disperser import (
    DisperserParams,
    is_disperser,
    rt00_degree,
    sample_left_regular,
    sample_verified_disperser,
    trim_top_degrees,
)
from .graph import BipartiteGraph, GraphDocument, graph_from_document, load_graph, save_graph

__all__ = [
    'BipartiteGraph',
    'DisperserParams',
    'GraphDocument',
    'graph_from_document',
    'is_disperser',
    'load_graph',
    'rt00_degree',
    'sample_left_regular',
    'sample_verified_disperser',
    'save_graph',
    'trim_top_degrees',
]
