"""
Utility functions for the workbench.
Contains file, JSON and number helpers used across different modules.
"""

import json
import os
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, List, Union

import numpy as np
import pandas as pd

from .errors import UsageError
from .logger import setup_logger

logger = setup_logger(__name__)

Number = Union[int, float, Fraction]


class WorkbenchJSONEncoder(json.JSONEncoder):
    """JSON encoder for numpy scalars, fractions, sets and workbench value types."""

    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, Fraction):
            return str(obj)
        elif isinstance(obj, (set, frozenset)):
            return sorted(obj)
        elif hasattr(obj, 'to_json'):
            return obj.to_json()
        return super().default(obj)


def validate_file_exists(file_path: Union[str, Path]) -> bool:
    """
    Validate that a file exists and is readable.

    Args:
        file_path: Path to the file to validate

    Returns:
        True if file exists and is readable, False otherwise
    """
    path = Path(file_path)
    if not path.exists():
        logger.error(f"File does not exist: {file_path}")
        return False
    if not path.is_file():
        logger.error(f"Path is not a file: {file_path}")
        return False
    if not os.access(path, os.R_OK):
        logger.error(f"File is not readable: {file_path}")
        return False
    return True


def ensure_directory_exists(directory_path: Union[str, Path]) -> bool:
    """
    Ensure a directory exists, create it if it doesn't.

    Args:
        directory_path: Path to the directory

    Returns:
        True if directory exists or was created successfully
    """
    try:
        Path(directory_path).mkdir(parents=True, exist_ok=True)
        return True
    except OSError as e:
        logger.error(f"Could not create directory {directory_path}: {str(e)}")
        return False


def read_json(file_path: Union[str, Path]) -> Any:
    """Load a JSON document, raising UsageError when the file is missing."""
    if not validate_file_exists(file_path):
        raise UsageError(f"cannot read {file_path}")
    with open(file_path, 'r', encoding='utf-8') as handle:
        return json.load(handle)


def write_json(data: Any, file_path: Union[str, Path]) -> str:
    """
    Write data as pretty JSON with the workbench encoder.

    Returns:
        The path written, as a string
    """
    path = Path(file_path)
    if path.parent and not ensure_directory_exists(path.parent):
        raise UsageError(f"cannot create directory for {file_path}")
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(data, handle, indent=2, sort_keys=True, cls=WorkbenchJSONEncoder)
        handle.write('\n')
    logger.debug(f"Wrote {path}")
    return str(path)


def dumps_json(data: Any) -> str:
    """Canonical JSON text (sorted keys) used for stdout and replay comparisons."""
    return json.dumps(data, indent=2, sort_keys=True, cls=WorkbenchJSONEncoder)


def write_table(frame: pd.DataFrame, file_path: Union[str, Path]) -> str:
    """Write a DataFrame as CSV without the index column."""
    path = Path(file_path)
    ensure_directory_exists(path.parent)
    frame.to_csv(path, index=False)
    return str(path)


def parse_number(value: Union[str, Number]) -> Number:
    """
    Parse a command-line number.

    Integers stay integers, "p/q" becomes an exact Fraction, anything else a float.

    Args:
        value: Text such as "12", "1/8" or "0.25"

    Returns:
        Parsed numeric value
    """
    if isinstance(value, (int, float, Fraction)):
        return value
    text = str(value).strip()
    try:
        if '/' in text:
            return Fraction(text)
        if text.lstrip('-').isdigit():
            return int(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a number: {value!r}") from e


def parse_int_list(value: str) -> List[int]:
    """Parse a comma separated list of integers ("2,4,6")."""
    try:
        return [int(item) for item in value.split(',') if item.strip()]
    except ValueError as e:
        raise UsageError(f"not an integer list: {value!r}") from e


def fraction_text(value: Number) -> str:
    """Render a number exactly when it is rational."""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else str(value.numerator)
    return str(value)


class _Timing(dict):
    """``elapsed_ms`` reads the running clock until the stopwatch stops."""

    def __init__(self):
        super().__init__(elapsed_ms=0.0)
        self.start = time.perf_counter()
        self.running = True

    def __getitem__(self, key):
        if key == 'elapsed_ms' and self.running:
            return (time.perf_counter() - self.start) * 1000.0
        return super().__getitem__(key)


@contextmanager
def stopwatch() -> Iterator[Dict[str, float]]:
    """Context manager timing its block; ``elapsed_ms`` is also valid inside it."""
    timing = _Timing()
    try:
        yield timing
    finally:
        timing['elapsed_ms'] = (time.perf_counter() - timing.start) * 1000.0
        timing.running = False
