"""
Runtime configuration for the workbench.
Enumeration budgets, trial caps and defaults read from the environment.
"""

import os

from dotenv import load_dotenv

from src.common.logger import setup_logger

# Load environment variables
load_dotenv()

logger = setup_logger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(float(raw))
    except ValueError:
        logger.warning(f"Ignoring non-numeric {name}={raw!r}, using {default}")
        return default


def _bool_env(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ('1', 'true', 'yes', 'on')


class WorkbenchConfig:
    """Budgets and defaults shared by the checkers, builders and CLI."""

    def __init__(self):
        """Initialize configuration from environment variables."""
        self.enum_budget = _int_env('WORKBENCH_ENUM_BUDGET', 10 ** 7)
        self.minor_budget = _int_env('WORKBENCH_MINOR_BUDGET', 10 ** 6)
        self.dist_budget = _int_env('WORKBENCH_DIST_BUDGET', 10 ** 6)
        self.path_cap = _int_env('WORKBENCH_PATH_CAP', 10 ** 6)
        self.max_trials = _int_env('WORKBENCH_MAX_TRIALS', 1000)
        self.jobs = max(1, _int_env('WORKBENCH_JOBS', 1))
        self.seed = _int_env('WORKBENCH_SEED', 0)
        self.output_dir = os.getenv('WORKBENCH_OUTPUT_DIR', 'data/outputs')
        self.scaled_constants = _bool_env('WORKBENCH_SCALED_CONSTANTS', True)

        logger.debug(
            f"Workbench config: enum_budget={self.enum_budget}, minor_budget={self.minor_budget}, "
            f"max_trials={self.max_trials}, jobs={self.jobs}"
        )

    def as_dict(self) -> dict:
        """Snapshot of the active settings for reports."""
        return {
            'enum_budget': self.enum_budget,
            'minor_budget': self.minor_budget,
            'dist_budget': self.dist_budget,
            'path_cap': self.path_cap,
            'max_trials': self.max_trials,
            'jobs': self.jobs,
            'seed': self.seed,
            'output_dir': self.output_dir,
            'scaled_constants': self.scaled_constants,
        }


# Global workbench configuration instance
workbench_config = WorkbenchConfig()
