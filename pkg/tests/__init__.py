"""
Test suite for the linear-circuit workbench.
One module per package, plus CLI and acceptance pipeline tests.
"""
