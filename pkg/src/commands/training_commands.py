#!/usr/bin/env python3

"""
Training commands for the EOFP toolkit

Contains train and sweep, both driven by key=value run configuration files.
"""

import argparse
from pathlib import Path

from ..services.training_service import TrainingService
from ..ui.adapter import UIProtocol
from ..ui.formatters import history_table, sweep_lines, sweep_table, training_lines
from .base import BaseCommand, CommandResult


class TrainCommand(BaseCommand):
    """Handle train: one quantization-aware training run."""

    def get_name(self) -> str:
        return "train"

    def get_description(self) -> str:
        return "Train the toy denoising network with per-epoch quantization"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("config", type=Path, help="Run configuration (key=value)")
        parser.add_argument("--history", type=Path, help="Per-epoch CSV (default: CONFIG with .history.csv)")
        parser.add_argument("--model-out", type=Path, help="Also export the final parameters as a raw model")

    def execute(self, args: argparse.Namespace, ui: UIProtocol) -> CommandResult:
        outcome = TrainingService(self.config).run_training(args.config, args.history, args.model_out)

        if self.machine_output(args):
            self.emit_lines(ui, training_lines(outcome))
        else:
            ui.show_table(history_table(outcome.history))
            evaluation = outcome.evaluation
            ui.show_success(
                f"Validation MSE {evaluation.mse:.6g}, output SNR {evaluation.output_snr_db:.2f} dB "
                f"({evaluation.snr_improvement_db:+.2f} dB over the noisy input)"
            )
            if outcome.exponent_stage_mse_delta is not None:
                ui.show_info(f"Exponent stage changes validation MSE by {outcome.exponent_stage_mse_delta!r}")
            ui.show_info(f"History written to {outcome.history_path}")
            if outcome.model_path is not None:
                ui.show_info(f"Model written to {outcome.model_path}")
        return CommandResult.ok(data=outcome)


class SweepCommand(BaseCommand):
    """Handle sweep: bit-width x rounding-mode grid."""

    def get_name(self) -> str:
        return "sweep"

    def get_description(self) -> str:
        return "Train every bit-width x mode cell and tabulate the results"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("config", type=Path, help="Sweep configuration (key=value)")
        parser.add_argument("--table", type=Path, help="Result CSV (default: CONFIG with .sweep.csv)")
        parser.add_argument(
            "--post-training",
            action="store_true",
            help="Also mask each unquantized network once after training, without retraining",
        )

    def execute(self, args: argparse.Namespace, ui: UIProtocol) -> CommandResult:
        outcome = TrainingService(self.config).run_sweep(args.config, args.table, post_training=args.post_training)

        if self.machine_output(args):
            self.emit_lines(ui, sweep_lines(outcome.table))
            ui.emit(f"table={outcome.table_path}")
        else:
            ui.show_table(sweep_table(outcome.table))
            ui.show_info(f"Table written to {outcome.table_path}")
        return CommandResult.ok(data=outcome)
