"""
Configuration package for the workbench.
"""
