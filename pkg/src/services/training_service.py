#!/usr/bin/env python3

"""
Training Service - Business logic for training runs and sweeps
"""

from pathlib import Path

from ..core import exponent_quant
from ..core.config import Config
from ..core.model_store import save_bytes, write_raw_model
from ..models.run_config import SweepConfig, TrainRunConfig, load_run_config
from ..training.network import ToyNetwork
from ..training.sweep import sweep, write_sweep_csv
from ..training.trainer import evaluate, train, write_history_csv
from ..utils.logging_config import get_logger
from .dtos import SweepOutcome, TrainingOutcome

logger = get_logger("training_service")


class TrainingService:
    """Runs the training harness from run configuration files."""

    def __init__(self, config: Config):
        self.config = config

    def run_training(
        self,
        config_path: Path,
        history_path: Path | None = None,
        model_path: Path | None = None,
    ) -> TrainingOutcome:
        """
        Train one network as described by ``config_path``.

        Args:
            config_path: key=value run configuration
            history_path: per-epoch CSV destination (default next to the config)
            model_path: optional raw model export of the final parameters

        Returns:
            TrainingOutcome with history and final evaluation
        """
        run = load_run_config(config_path, TrainRunConfig)
        result = train(run)
        evaluation = evaluate(result.network, result.dataset)

        if history_path is None:
            history_path = self.config.default_output(config_path, self.config.history_suffix)
        write_history_csv(result.history, history_path)

        if model_path is not None:
            save_bytes(model_path, write_raw_model(result.network.export_parameters()))

        delta = None
        spec = run.quant_spec
        if spec is not None and spec.n > 0:
            delta = self._exponent_stage_delta(result.network, result.dataset, spec.n, evaluation.mse)

        return TrainingOutcome(
            run=run,
            history=result.history,
            evaluation=evaluation,
            history_path=Path(history_path),
            model_path=Path(model_path) if model_path is not None else None,
            exponent_stage_mse_delta=delta,
        )

    def run_sweep(
        self, config_path: Path, table_path: Path | None = None, post_training: bool = False
    ) -> SweepOutcome:
        """Run every cell of a sweep configuration and write the table."""
        sweep_config = load_run_config(config_path, SweepConfig)
        if post_training:
            sweep_config = sweep_config.model_copy(update={"post_training": True})
        if sweep_config.workers == 1 and self.config.sweep_workers > 1:
            sweep_config = sweep_config.model_copy(update={"workers": self.config.sweep_workers})
        table = sweep(sweep_config)

        if table_path is None:
            table_path = self.config.default_output(config_path, self.config.sweep_suffix)
        write_sweep_csv(table, table_path)
        return SweepOutcome(config=sweep_config, table=table, table_path=Path(table_path))

    @staticmethod
    def _exponent_stage_delta(network: ToyNetwork, dataset, n: int, baseline_mse: float) -> float:
        """Change in validation MSE after packing the final model through the exponent stage."""
        exponent_range, packed = exponent_quant.quantize_model(network.export_parameters(), n)
        decoded = exponent_quant.decode_model(exponent_range, packed, n)
        rebuilt = ToyNetwork.from_parameters(decoded, network.activations)
        delta = evaluate(rebuilt, dataset).mse - baseline_mse
        logger.info(f"Exponent stage {exponent_range}: validation MSE delta {delta!r}")
        return delta
