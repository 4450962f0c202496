"""
Command-line front end: argument parsing, dispatch and run reports.
"""

from .main import build_parser, dispatch, main
from .reports import EXIT_COUNTEREXAMPLE, EXIT_EXHAUSTED, EXIT_OK, EXIT_USAGE, CommandOutcome, RunReport

__all__ = [
    'CommandOutcome',
    'EXIT_COUNTEREXAMPLE',
    'EXIT_EXHAUSTED',
    'EXIT_OK',
    'EXIT_USAGE',
    'RunReport',
    'build_parser',
    'dispatch',
    'main',
]
