#!/usr/bin/env python3

"""
Logging configuration for the EOFP toolkit

Provides structured logging with file rotation and configurable levels.
"""

import logging
import logging.handlers
import os
from pathlib import Path


def setup_logging(log_level: str | None = None) -> logging.Logger:
    """
    Setup structured logging for the toolkit.

    Args:
        log_level: Log level (DEBUG, INFO, WARNING, ERROR).
                   Defaults to env var EOFP_LOG_LEVEL or INFO.

    Returns:
        Configured logger instance
    """
    if log_level is None:
        log_level = os.getenv("EOFP_LOG_LEVEL", "INFO")

    logger = logging.getLogger("eofp")
    logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))

    # Prevent duplicate handlers if setup_logging called multiple times
    if logger.handlers:
        return logger

    # File handler (rotating logs)
    log_dir = Path(os.getenv("EOFP_LOG_DIR", Path.home() / ".eofp" / "logs"))
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler: logging.Handler | None = logging.handlers.RotatingFileHandler(
            log_dir / "eofp.log",
            maxBytes=10_000_000,  # 10MB
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setLevel(logging.DEBUG)
    except OSError:
        file_handler = None

    # Console handler (only warnings/errors - reports go through the UI)
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.WARNING)

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if file_handler is not None:
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger for a specific module.

    Args:
        name: Module name (e.g., 'mantissa', 'store', 'trainer')

    Returns:
        Logger instance for the module
    """
    return logging.getLogger(f"eofp.{name}")
