"""Utility functions for the Ignatiev frame toolkit."""

import logging
import sys
import threading
from logging.handlers import RotatingFileHandler
from typing import List, Optional, Tuple

from .config import settings

PACKAGE_LOGGER = "ignatiev_frame"

# Global lock for logger initialization
_logger_lock = threading.Lock()
_handlers_configured = False


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Configure the package logger once.

    Stdout is reserved for command output, so the console handler writes to stderr.

    Args:
        level: Override for the console level (defaults to settings.log_level)

    Returns:
        The package logger
    """
    global _handlers_configured

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    with _logger_lock:
        if not _handlers_configured:
            package_logger.setLevel(logging.DEBUG)
            package_logger.propagate = False

            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%H:%M:%S"
            ))
            package_logger.addHandler(console_handler)

            if settings.log_file is not None:
                file_handler = RotatingFileHandler(
                    settings.log_file,
                    maxBytes=10 * 1024 * 1024,  # 10MB
                    backupCount=5,
                    encoding="utf-8",
                    delay=True
                )
                file_handler.setLevel(logging.DEBUG)
                file_handler.setFormatter(logging.Formatter(
                    "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
                ))
                package_logger.addHandler(file_handler)

            _handlers_configured = True

        for handler in package_logger.handlers:
            if not isinstance(handler, RotatingFileHandler):
                handler.setLevel(level or settings.log_level)

    return package_logger


def get_logger(name: str) -> logging.Logger:
    """
    Get configured logger instance.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Configured logger
    """
    configure_logging()
    if not name.startswith(PACKAGE_LOGGER):
        name = f"{PACKAGE_LOGGER}.{name}"
    return logging.getLogger(name)


def chunk_ranges(size: int, chunk_size: int) -> List[Tuple[int, int]]:
    """
    Split ``range(size)`` into consecutive ``(start, stop)`` slices.

    Args:
        size: Number of items
        chunk_size: Items per slice

    Returns:
        List of (start, stop) tuples
    """
    return [(i, min(i + chunk_size, size)) for i in range(0, size, chunk_size)]


def format_duration(seconds: float) -> str:
    """
    Format duration as human-readable string.

    Args:
        seconds: Duration in seconds

    Returns:
        Formatted string
    """
    if seconds < 60:
        return f"{seconds:.1f} seconds"
    elif seconds < 3600:
        minutes = seconds / 60
        return f"{minutes:.1f} minutes"
    else:
        hours = seconds / 3600
        return f"{hours:.1f} hours"
