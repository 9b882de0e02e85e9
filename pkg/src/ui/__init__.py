"""
UI module for the EOFP toolkit

Contains console interaction, formatting, and display logic.
"""

from .adapter import MockUIAdapter, RichUIAdapter, UIProtocol
from .console import (
    create_ui_adapter,
    get_console,
    get_error_console,
)
from .formatters import (
    bit_layout_lines,
    bit_layout_table,
    describe_kind,
    histogram_lines,
    history_table,
    inspect_lines,
    inspect_table,
    quantize_lines,
    size_report_lines,
    size_report_table,
    sweep_lines,
    sweep_table,
    training_lines,
)

__all__ = [
    # Adapters
    'UIProtocol', 'RichUIAdapter', 'MockUIAdapter', 'create_ui_adapter',

    # Console functions
    'get_console', 'get_error_console',

    # Formatter functions
    'describe_kind', 'size_report_table', 'size_report_lines', 'quantize_lines',
    'inspect_table', 'inspect_lines', 'histogram_lines', 'bit_layout_table',
    'bit_layout_lines', 'history_table', 'training_lines', 'sweep_table', 'sweep_lines',
]
