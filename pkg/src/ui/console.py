#!/usr/bin/env python3

"""
Console interaction module for the EOFP toolkit

Reports go to standard output; status and error lines go to standard error
so that machine-readable output stays clean.
"""

from rich.console import Console

# Global console instances
_console = Console(highlight=False)
_error_console = Console(stderr=True, highlight=False)


def get_console() -> Console:
    """Get the global console instance."""
    return _console


def get_error_console() -> Console:
    """Get the global stderr console instance."""
    return _error_console


def create_ui_adapter():
    """
    Factory function to create UI adapter.

    Returns:
        RichUIAdapter instance wrapping the global consoles
    """
    from .adapter import RichUIAdapter

    return RichUIAdapter(get_console(), get_error_console())
