"""
Centralized Logging Configuration

This module provides a consistent logging configuration for the whole package.
It sets up both file and console logging. The console handler writes to stderr
so that command output on stdout stays byte-identical between runs.
"""

import os
import logging
from logging.handlers import RotatingFileHandler

from rich.console import Console
from rich.logging import RichHandler

# Constants
LOG_FILENAME = "permstats.log"
DEFAULT_LOG_DIRECTORY = "./logs"
DEFAULT_LOG_LEVEL = logging.INFO
FILE_LOG_LEVEL = logging.INFO
CONSOLE_LOG_LEVEL = logging.WARNING

# Configure root logger only once
_is_configured = False


def _resolve_level(name: str | None, fallback: int) -> int:
    if not name:
        return fallback
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else fallback


def configure_logging(force: bool = False):
    """Configure the root logger with file and console handlers.

    The log directory, level and file switch are read from the environment
    (PERMSTATS_LOG_DIR, PERMSTATS_LOG_LEVEL, PERMSTATS_LOG_FILE) at call time.
    """
    global _is_configured

    if _is_configured and not force:
        return

    level = _resolve_level(os.getenv("PERMSTATS_LOG_LEVEL"), DEFAULT_LOG_LEVEL)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Remove any existing handlers
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    if os.getenv("PERMSTATS_LOG_FILE", "1") != "0":
        log_directory = os.getenv("PERMSTATS_LOG_DIR", DEFAULT_LOG_DIRECTORY)
        try:
            os.makedirs(log_directory, exist_ok=True)
            file_handler = RotatingFileHandler(
                os.path.join(log_directory, LOG_FILENAME),
                maxBytes=10 * 1024 * 1024,  # 10MB
                backupCount=5,
            )
            file_handler.setLevel(FILE_LOG_LEVEL)
            file_handler.setFormatter(
                logging.Formatter(
                    "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                    datefmt="%Y-%m-%d %H:%M:%S",
                )
            )
            root_logger.addHandler(file_handler)
        except OSError:
            # read-only checkout: console logging only
            pass

    console_handler = RichHandler(
        console=Console(stderr=True),
        rich_tracebacks=True,
        show_time=False,
        show_path=False,
    )
    console_handler.setLevel(max(CONSOLE_LOG_LEVEL, level))
    console_handler.setFormatter(logging.Formatter("%(message)s"))
    root_logger.addHandler(console_handler)

    _is_configured = True


def set_console_level(level: int) -> None:
    """Adjust the console handler threshold (used by the CLI --verbose flag)."""
    configure_logging()
    for handler in logging.getLogger().handlers:
        if isinstance(handler, RichHandler):
            handler.setLevel(level)


def get_logger(name):
    """
    Get a logger with the specified name.

    Args:
        name: The name of the logger, typically the module name.

    Returns:
        A configured logger instance.
    """
    configure_logging()
    return logging.getLogger(name)
