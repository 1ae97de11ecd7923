"""
Environment Configuration Module

This module loads and manages environment variables from a .env file
with defaults and validation for the permstats toolkit.
"""

import logging
import os

from dotenv import load_dotenv

from . import logger_config

logger = logger_config.get_logger(__name__)

# Load environment variables from .env file
load_dotenv()


class Config:
    """Configuration class that loads environment variables with defaults and validation."""

    def __init__(self):
        """Initialize configuration by loading environment variables."""
        self._load_config()
        self._validate_config()

    def _load_config(self):
        """Load all configuration values from environment variables."""

        # Enumeration
        self.JOBS_RAW = os.getenv("PERMSTATS_JOBS", "1")

        # Logging
        self.LOG_LEVEL = os.getenv("PERMSTATS_LOG_LEVEL", "INFO").upper()
        self.LOG_DIR = os.getenv("PERMSTATS_LOG_DIR", "./logs")

        # Files
        self.SETTINGS_FILE = os.getenv(
            "PERMSTATS_SETTINGS_FILE", "./config/verify_settings.json"
        )
        self.REPORT_DIR = os.getenv("PERMSTATS_REPORT_DIR", "./reports")

    def _validate_config(self):
        """Validate configuration values; raise ValueError listing every problem."""
        problems = []

        try:
            self.JOBS = int(self.JOBS_RAW)
            if self.JOBS < 1:
                problems.append(f"PERMSTATS_JOBS must be >= 1 (got {self.JOBS_RAW})")
        except ValueError:
            self.JOBS = 1
            problems.append(f"PERMSTATS_JOBS is not an integer (got {self.JOBS_RAW!r})")

        if not isinstance(logging.getLevelName(self.LOG_LEVEL), int):
            problems.append(f"PERMSTATS_LOG_LEVEL is not a logging level (got {self.LOG_LEVEL!r})")

        if problems:
            error_msg = f"Invalid environment configuration: {'; '.join(problems)}"
            logger.error(f"[CONFIG] {error_msg}")
            raise ValueError(error_msg)

    def get_paths(self):
        """Get file locations as a dictionary."""
        return {
            "settings_file": self.SETTINGS_FILE,
            "report_dir": self.REPORT_DIR,
            "log_dir": self.LOG_DIR,
        }


# Create a global configuration instance
config = Config()

# Export commonly used configurations
DEFAULT_JOBS = config.JOBS
LOG_LEVEL = config.LOG_LEVEL
SETTINGS_FILE_PATH = config.SETTINGS_FILE
REPORT_DIR = config.REPORT_DIR
