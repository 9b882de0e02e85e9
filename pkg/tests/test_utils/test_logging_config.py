#!/usr/bin/env python3

"""
Tests for src.utils.logging_config module.
"""

import logging

import pytest

from src.utils.logging_config import get_logger, setup_logging


@pytest.fixture
def clean_logger():
    """Remove handlers added by setup_logging after each test."""
    logger = logging.getLogger("eofp")
    saved = list(logger.handlers)
    logger.handlers.clear()
    yield logger
    for handler in logger.handlers:
        handler.close()
    logger.handlers[:] = saved


def test_setup_logging_level(clean_logger):
    """Test the requested level is applied."""
    logger = setup_logging("debug")

    assert logger is clean_logger
    assert logger.level == logging.DEBUG


def test_setup_logging_env_default(clean_logger, monkeypatch):
    """Test EOFP_LOG_LEVEL is used when no level is passed."""
    monkeypatch.setenv("EOFP_LOG_LEVEL", "WARNING")
    assert setup_logging().level == logging.WARNING


def test_setup_logging_writes_file(clean_logger, temp_dir, monkeypatch):
    """Test a rotating log file is created in EOFP_LOG_DIR."""
    monkeypatch.setenv("EOFP_LOG_DIR", str(temp_dir))
    setup_logging("INFO")

    get_logger("store").info("wrote container")
    for handler in clean_logger.handlers:
        handler.flush()

    assert "wrote container" in (temp_dir / "eofp.log").read_text(encoding="utf-8")


def test_setup_logging_is_idempotent(clean_logger):
    """Test repeated setup does not duplicate handlers."""
    setup_logging("INFO")
    count = len(clean_logger.handlers)
    setup_logging("ERROR")

    assert len(clean_logger.handlers) == count
    assert clean_logger.level == logging.ERROR


def test_console_handler_shows_warnings_only(clean_logger):
    """Test reports stay off the console handler."""
    setup_logging("DEBUG")
    stream_handlers = [
        h for h in clean_logger.handlers if type(h) is logging.StreamHandler
    ]
    assert stream_handlers[0].level == logging.WARNING


def test_get_logger_namespace():
    """Test module loggers live under eofp."""
    assert get_logger("trainer").name == "eofp.trainer"
