"""
Common utilities for the workbench: logging, errors, file helpers and seeded trials.
"""
