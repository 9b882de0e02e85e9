#!/usr/bin/env python3

"""
Main application for the EOFP toolkit

Thin orchestrator: parses the command line, sets up logging and
configuration, dispatches to the registered sub-command and turns the
outcome into a process exit code.

Exit codes:
  0  success
  1  usage error
  2  data, format or I/O error
  3  numeric error (exponent overflow, non-finite values, divergence)
"""

import argparse
import sys
from collections.abc import Sequence

from dotenv import load_dotenv

from src import __version__
from src.commands import CommandRegistry, EofpArgumentParser, create_command_registry
from src.core.config import Config
from src.exceptions import EofpError, UsageError
from src.ui import create_ui_adapter
from src.ui.adapter import UIProtocol
from src.utils.logging_config import get_logger, setup_logging

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def build_parser(registry: CommandRegistry) -> argparse.ArgumentParser:
    """Top-level parser with one sub-parser per registered command."""
    parser = EofpArgumentParser(
        prog="eofp",
        description="EOFP - exponent-only floating point quantization of model parameters",
        epilog="Examples:\n"
        "  eofp quantize model.raw --bits 9                 # n=23, mantissa+exponent stage\n"
        "  eofp quantize model.raw --bits 20 --chop         # chop baseline\n"
        "  eofp quantize model.raw --bits 12 --no-exponent-stage\n"
        "  eofp dequantize model.eofp -o model.raw\n"
        "  eofp inspect model.eofp                          # header, {max, min, len}, histogram\n"
        "  eofp inspect --bits-of 0.01234\n"
        "  eofp size-report --params 2877929 --bits 9 --len 5\n"
        "  eofp train run.cfg --history run.csv --model-out trained.raw\n"
        "  eofp sweep sweep.cfg --machine",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level", type=str.upper, choices=LOG_LEVELS, default=None,
        help="Log level for the log file (default: EOFP_LOG_LEVEL or INFO)",
    )
    registry.build_parser(parser)
    return parser


def _command_token(argv: Sequence[str]) -> str | None:
    """First positional token, i.e. the sub-command name as typed."""
    skip_next = False
    for token in argv:
        if skip_next:
            skip_next = False
            continue
        if token == "--log-level":
            skip_next = True
            continue
        if not token.startswith("-"):
            return token
    return None


def check_command(registry: CommandRegistry, argv: Sequence[str]) -> None:
    """
    Reject unknown sub-commands with a fuzzy suggestion.

    Raises:
        UsageError: no command or an unknown one
    """
    token = _command_token(argv)
    if token is None:
        raise UsageError("a command is required\n" + registry.get_help_text())
    if registry.find_command(token) is None:
        similar = registry.find_similar_command(token)
        hint = f" Did you mean '{similar}'?" if similar else ""
        raise UsageError(f"Unknown command: {token}.{hint}\n" + registry.get_help_text())


def main(argv: Sequence[str] | None = None, ui: UIProtocol | None = None) -> int:
    """
    Main entry point.

    Args:
        argv: command-line arguments without the program name (default sys.argv[1:])
        ui: UI adapter (default: Rich consoles)

    Returns:
        Process exit code
    """
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    if ui is None:
        ui = create_ui_adapter()

    # Load environment variables before reading configuration
    load_dotenv()
    config = Config()
    registry = create_command_registry(config)
    parser = build_parser(registry)

    try:
        if not any(token in ("-h", "--help", "--version") for token in argv):
            check_command(registry, argv)
        args = parser.parse_args(argv)
    except UsageError as e:
        ui.show_error(str(e))
        return e.exit_code
    except SystemExit as e:
        # --help / --version
        return int(e.code or 0)

    if args.log_level:
        config.log_level = args.log_level
    setup_logging(config.log_level)
    logger = get_logger("main")
    logger.info(f"Running {args.command} ({' '.join(argv)})")

    try:
        result = registry.execute_command(args, ui)
    except EofpError as e:
        ui.show_error(str(e))
        return e.exit_code
    except KeyboardInterrupt:
        ui.show_warning("Interrupted by user (Ctrl+C).")
        return 130

    logger.info(f"{args.command} finished with exit code {result.exit_code}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
