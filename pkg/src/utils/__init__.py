"""
Utils module for the EOFP toolkit

Contains logging setup and error-handling context managers.
"""

from .error_handlers import handle_config_operation, handle_file_operation, handle_model_read
from .logging_config import get_logger, setup_logging

__all__ = [
    # Logging
    'setup_logging', 'get_logger',

    # Error handling
    'handle_file_operation', 'handle_model_read', 'handle_config_operation',
]
