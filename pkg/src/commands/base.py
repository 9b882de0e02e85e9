#!/usr/bin/env python3

"""
Base command pattern classes for the EOFP toolkit

Provides the foundation for implementing sub-commands using the command pattern.
"""

import argparse
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any

from thefuzz import fuzz, process

from ..core.config import Config
from ..exceptions import EofpError, UsageError
from ..ui.adapter import UIProtocol
from ..utils.logging_config import get_logger

logger = get_logger("commands")


@dataclass
class CommandResult:
    """
    Result of a command execution.
    """
    success: bool
    message: str | None = None
    data: Any | None = None
    exit_code: int = 0

    @classmethod
    def ok(cls, message: str | None = None, data: Any = None) -> 'CommandResult':
        """Create a successful result."""
        return cls(success=True, message=message, data=data, exit_code=0)

    @classmethod
    def fail(cls, message: str, exit_code: int = 2, data: Any = None) -> 'CommandResult':
        """Create a failed result."""
        return cls(success=False, message=message, data=data, exit_code=exit_code)


class EofpArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems as UsageError (exit 1)."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


class BaseCommand(ABC):
    """
    Base class for all sub-commands using the command pattern.
    """

    def __init__(self, config: Config):
        """
        Initialize the command.

        Args:
            config: Configuration object
        """
        self.config = config

    @abstractmethod
    def get_name(self) -> str:
        """
        Get the sub-command name (e.g., "quantize", "inspect").

        Returns:
            Command name string
        """
        pass

    @abstractmethod
    def get_description(self) -> str:
        """
        Get a description of what the command does.

        Returns:
            Command description
        """
        pass

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare the command's arguments on its sub-parser."""
        pass

    @abstractmethod
    def execute(self, args: argparse.Namespace, ui: UIProtocol) -> CommandResult:
        """
        Execute the command.

        Args:
            args: Parsed command-line arguments
            ui: UI adapter for all output

        Returns:
            CommandResult indicating success/failure and any data
        """
        pass

    def machine_output(self, args: argparse.Namespace) -> bool:
        """True when key=value output was requested by flag or configuration."""
        return bool(getattr(args, "machine", False) or self.config.machine_output)

    def emit_lines(self, ui: UIProtocol, lines: list[str]) -> None:
        for line in lines:
            ui.emit(line)


class CommandRegistry:
    """
    Registry for managing sub-commands using the command pattern.
    """

    def __init__(self, config: Config):
        """
        Initialize the command registry.

        Args:
            config: Configuration object
        """
        self.config = config
        self.commands: list[BaseCommand] = []

    def register(self, command: BaseCommand) -> None:
        """
        Register a command.

        Args:
            command: Command instance to register
        """
        self.commands.append(command)

    def find_command(self, name: str) -> BaseCommand | None:
        """
        Find a command by exact name.

        Args:
            name: Sub-command name

        Returns:
            Matching command or None
        """
        for command in self.commands:
            if command.get_name() == name:
                return command
        return None

    def get_all_command_names(self) -> list[str]:
        """
        Get all registered command names.

        Returns:
            List of command names
        """
        return [cmd.get_name() for cmd in self.commands]

    def find_similar_command(self, name: str, threshold: int = 70) -> str | None:
        """
        Find a similar command name using fuzzy matching.

        Args:
            name: Unknown command name typed by the user
            threshold: Minimum similarity score (0-100)

        Returns:
            Most similar command name or None
        """
        names = self.get_all_command_names()
        if not names or not name:
            return None
        result = process.extractOne(name.lower(), names, scorer=fuzz.ratio)
        if result and result[1] >= threshold:
            return result[0]
        return None

    def build_parser(self, parser: argparse.ArgumentParser) -> None:
        """
        Attach one sub-parser per registered command.

        Every sub-command accepts ``--machine`` for key=value output.
        """
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            "--machine", action="store_true", help="Print line-oriented key=value output"
        )
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
        for command in self.commands:
            sub = subparsers.add_parser(
                command.get_name(),
                parents=[common],
                help=command.get_description(),
                description=command.get_description(),
            )
            command.add_arguments(sub)

    def execute_command(self, args: argparse.Namespace, ui: UIProtocol) -> CommandResult:
        """
        Execute the command selected in ``args``.

        Domain errors are reported through the UI and turned into a failed
        result carrying the error's exit code.

        Args:
            args: Parsed arguments (``args.command`` names the command)
            ui: UI adapter

        Returns:
            CommandResult of the command
        """
        command = self.find_command(args.command)
        if command is None:
            message = f"Unknown command: {args.command}"
            ui.show_error(message)
            return CommandResult.fail(message, exit_code=UsageError.exit_code)
        try:
            return command.execute(args, ui)
        except EofpError as e:
            logger.warning(f"{command.get_name()} failed with exit code {e.exit_code}: {e}")
            ui.show_error(str(e))
            return CommandResult.fail(str(e), exit_code=e.exit_code)

    def get_help_text(self) -> str:
        """
        Get help text for all registered commands.

        Returns:
            Formatted help text
        """
        if not self.commands:
            return "No commands available."

        help_lines = ["Available commands:"]
        for command in self.commands:
            help_lines.append(f"  {command.get_name()} - {command.get_description()}")

        return "\n".join(help_lines)
