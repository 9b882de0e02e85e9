#!/usr/bin/env python3

"""
Error handling context managers

Provides consistent error handling across the toolkit.
"""

import logging
import struct
from contextlib import contextmanager

logger = logging.getLogger("eofp.errors")


@contextmanager
def handle_file_operation(operation_name: str):
    """
    Context manager for file operations with specific error handling.

    Args:
        operation_name: Name of the operation for logging

    Raises:
        FileOperationError: On file-related errors
    """
    from ..exceptions import FileOperationError

    try:
        yield
    except FileNotFoundError as e:
        logger.error(f"File not found during {operation_name}", exc_info=True)
        raise FileOperationError(f"File not found: {e}") from e
    except PermissionError as e:
        logger.error(f"Permission denied during {operation_name}", exc_info=True)
        raise FileOperationError(f"Permission denied: {e}") from e
    except OSError as e:
        logger.error(f"OS error during {operation_name}", exc_info=True)
        raise FileOperationError(f"Operation failed: {e}") from e


@contextmanager
def handle_model_read(operation_name: str):
    """
    Context manager for decoding model bytes.

    Domain errors pass through; anything else raised while decoding a
    malformed stream is reported as a format error.

    Args:
        operation_name: Name of the operation for logging

    Raises:
        ModelFormatError: On unexpected decoding failures
    """
    from ..exceptions import EofpError, ModelFormatError

    try:
        yield
    except EofpError:
        raise
    except (struct.error, ValueError, IndexError, OverflowError, MemoryError) as e:
        logger.error(f"Malformed model during {operation_name}", exc_info=True)
        raise ModelFormatError(f"Malformed model data: {e}") from e


@contextmanager
def handle_config_operation(operation_name: str):
    """
    Context manager for reading run configuration files.

    Args:
        operation_name: Name of the operation for logging

    Raises:
        ConfigurationError: On unreadable or malformed configuration
    """
    from pydantic import ValidationError as PydanticValidationError

    from ..exceptions import ConfigurationError, EofpError

    try:
        yield
    except EofpError:
        raise
    except PydanticValidationError as e:
        logger.error(f"Invalid configuration during {operation_name}", exc_info=True)
        raise ConfigurationError(f"Invalid configuration: {e}") from e
    except OSError as e:
        logger.error(f"Cannot read configuration during {operation_name}", exc_info=True)
        raise ConfigurationError(f"Cannot read configuration: {e}") from e
    except ValueError as e:
        logger.error(f"Malformed configuration during {operation_name}", exc_info=True)
        raise ConfigurationError(f"Malformed configuration: {e}") from e
