"""
Logging configuration for the workbench.
Provides consistent, colorized console logging across all modules.
"""

import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import colorlog
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

_MAX_WITNESS_CHARS = 200


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


def setup_logger(
    name: str,
    log_level: Optional[str] = None,
    log_to_file: Optional[bool] = None
) -> logging.Logger:
    """
    Set up a logger with consistent formatting.

    Console output goes to stderr so that command results on stdout stay clean.

    Args:
        name: Logger name (usually __name__)
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_to_file: Whether to also log to logs/workbench.log (default from LOG_TO_FILE)

    Returns:
        Configured logger instance
    """
    if log_level is None:
        log_level = os.getenv('LOG_LEVEL', 'INFO')
    if log_to_file is None:
        log_to_file = _env_flag('LOG_TO_FILE', False)

    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    console_formatter = colorlog.ColoredFormatter(
        '%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        log_colors={
            'DEBUG': 'cyan',
            'INFO': 'green',
            'WARNING': 'yellow',
            'ERROR': 'red',
            'CRITICAL': 'bold_red',
        }
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    if log_to_file:
        log_dir = Path(os.getenv('LOG_DIR', 'logs'))
        log_dir.mkdir(parents=True, exist_ok=True)

        file_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        file_handler = logging.FileHandler(log_dir / 'workbench.log', encoding='utf-8')
        file_handler.setFormatter(file_formatter)
        file_handler.setLevel(logging.DEBUG)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger


def truncate_witness(value: Any, limit: int = _MAX_WITNESS_CHARS) -> str:
    """Render a witness for log output, cutting very long ones."""
    text = str(value)
    if len(text) <= limit:
        return text
    return f"{text[:limit - 3]}..."


def log_verification_failure(logger: logging.Logger, check: str, details: Dict[str, Any],
                             level: int = logging.WARNING) -> None:
    """
    Log a refuted property in a structured format.

    Args:
        logger: Logger instance
        check: Name of the checker that produced the counterexample
        details: Witness and parameters (long values are truncated)
        level: Log level; sample-and-verify loops pass DEBUG
    """
    rendered = {key: truncate_witness(value) for key, value in details.items()}
    logger.log(level, f"Verification Failure - {check}: {rendered}")
