#!/usr/bin/env python3
"""
Pytest runner for the workbench test suite.
Skips tests marked slow unless --all is given.
"""

import argparse
import os
import subprocess
import sys
from pathlib import Path


def main() -> int:
    """Run the suite with pytest in a subprocess rooted at the project directory."""
    parser = argparse.ArgumentParser(description='Run the workbench tests')
    parser.add_argument('--all', action='store_true', help='Include tests marked slow')
    parser.add_argument('--cov', action='store_true', help='Collect coverage for src/')
    args = parser.parse_args()

    project_root = Path(__file__).parent.parent
    cmd = [
        sys.executable, '-m', 'pytest',
        'tests',
        '-v',
        '--tb=short',
        f'--rootdir={project_root}',
    ]
    if not args.all:
        cmd += ['-m', 'not slow']
    if args.cov:
        cmd += ['--cov=src', '--cov-report=term-missing']

    env = {**os.environ, 'PYTHONPATH': str(project_root)}

    print("🧪 WORKBENCH TEST SUITE")
    print("=" * 70)
    print(f"Executing: {' '.join(cmd)}")
    print("=" * 70 + "\n")

    try:
        result = subprocess.run(cmd, cwd=project_root, env=env, text=True)
    except FileNotFoundError:
        print("❌ ERROR: pytest not found. Install with: pip install -r requirements.txt")
        return 1

    print("\n" + "=" * 70)
    if result.returncode == 0:
        print("✅ ALL TESTS PASSED")
    else:
        print(f"❌ TESTS FAILED (exit code {result.returncode})")
    print("=" * 70)
    return result.returncode


if __name__ == '__main__':
    sys.exit(main())
