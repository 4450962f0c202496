"""
Command-line entry point for the workbench.
Usage: python scripts/workbench.py <command> <action> [options]
"""

import sys
from pathlib import Path

# Add project root for imports
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
