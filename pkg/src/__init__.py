"""
Linear-circuit code workbench.
Constructs, transforms and exhaustively verifies bounded-depth linear encoders,
inverse-Ackermann bound calculators and superconcentrator codes.
"""

__version__ = "1.0.0"
