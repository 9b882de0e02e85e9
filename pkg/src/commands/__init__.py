"""
Command module for the EOFP toolkit

Contains sub-command handlers implementing the command pattern.
"""

from ..core.config import Config
from .base import BaseCommand, CommandRegistry, CommandResult, EofpArgumentParser
from .model_commands import DequantizeCommand, InspectCommand, QuantizeCommand, SizeReportCommand
from .training_commands import SweepCommand, TrainCommand


def create_command_registry(config: Config) -> CommandRegistry:
    """
    Create and configure the command registry with all available commands.

    Args:
        config: Configuration object

    Returns:
        Configured CommandRegistry instance
    """
    registry = CommandRegistry(config)

    # Model file commands
    registry.register(QuantizeCommand(config))
    registry.register(DequantizeCommand(config))
    registry.register(InspectCommand(config))
    registry.register(SizeReportCommand(config))

    # Training commands
    registry.register(TrainCommand(config))
    registry.register(SweepCommand(config))

    return registry


__all__ = [
    'BaseCommand',
    'CommandResult',
    'CommandRegistry',
    'EofpArgumentParser',
    'create_command_registry'
]
