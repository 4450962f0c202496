"""
Batch runner for the acceptance experiments.
"""

from .acceptance_pipeline import AcceptancePipeline, AcceptanceSizes, ExperimentResult

__all__ = ['AcceptancePipeline', 'AcceptanceSizes', 'ExperimentResult']
