"""
Script to run the acceptance experiments.
Exits 0 only when every selected experiment passes.
"""

import argparse
import sys
from pathlib import Path

# Add project root for imports
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from src.pipeline.acceptance_pipeline import AcceptancePipeline, AcceptanceSizes
from src.common.logger import setup_logger

logger = setup_logger(__name__)


def main() -> bool:
    """Run the acceptance pipeline and export its results."""
    parser = argparse.ArgumentParser(description='Run the workbench acceptance experiments')
    parser.add_argument('--full', action='store_true', help='Use the full acceptance sizes (slow)')
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--only', default=None, help='Comma separated experiment names')
    parser.add_argument('--out', default=None, help='Output directory')
    args = parser.parse_args()

    logger.info("=== Workbench Acceptance Suite ===")
    pipeline = AcceptancePipeline(AcceptanceSizes.full() if args.full else AcceptanceSizes(), seed=args.seed)
    names = [name.strip() for name in args.only.split(',')] if args.only else None

    logger.info("Step 1: Running experiments...")
    pipeline.run_all(names)

    logger.info("Step 2: Exporting results...")
    exported = pipeline.export_results(args.out)
    for name, path in exported.items():
        logger.info(f"  {name}: {path}")

    if pipeline.all_passed:
        logger.info("=== Acceptance suite passed ===")
    else:
        failed = [name for name, result in pipeline.results.items() if not result.passed]
        logger.error(f"Acceptance suite failed: {', '.join(failed)}")
    return pipeline.all_passed


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
