#!/usr/bin/env python3

"""
Bit-width x rounding-mode sweep

Trains one network per (bit-width, mode, seed) cell with identical seeds
across cells and averages the final validation metrics over seeds.
Degradation is measured against the unquantized (32-bit) result of the
same seeds. With ``post_training`` set, the unquantized networks are also
masked once after training at every cell, for comparison.
"""

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..models.quant import FLOAT_BITS, QuantMode
from ..models.run_config import SweepConfig, TrainRunConfig
from ..utils.error_handlers import handle_file_operation
from ..utils.logging_config import get_logger
from .network import configure_torch
from .post_training import post_training_sweep
from .trainer import TrainResult, evaluate, train

logger = get_logger("sweep")

# (bit_width, mode, seed); bit_width None is the unquantized baseline
Job = tuple[int | None, QuantMode, int]

SWEEP_COLUMNS = [
    "bit_width",
    "mode",
    "n",
    "val_mse",
    "snr_improvement_db",
    "degradation_db",
    "post_training_snr_improvement_db",
    "post_training_degradation_db",
]


@dataclass(frozen=True)
class RunOutcome:
    """Final validation metrics of one training run."""

    val_mse: float
    snr_improvement_db: float


@dataclass
class SweepCell:
    """Seed-averaged result of one (bit-width, mode) pair."""

    bit_width: int
    mode: QuantMode
    outcomes: list[RunOutcome]
    baseline_improvement_db: float
    post_training: list[RunOutcome] = field(default_factory=list)

    @property
    def n(self) -> int:
        return FLOAT_BITS - self.bit_width

    @property
    def val_mse(self) -> float:
        return float(np.mean([o.val_mse for o in self.outcomes]))

    @property
    def snr_improvement_db(self) -> float:
        return float(np.mean([o.snr_improvement_db for o in self.outcomes]))

    @property
    def degradation_db(self) -> float:
        """Seed-mean SNR improvement lost relative to the unquantized runs."""
        return self.baseline_improvement_db - self.snr_improvement_db

    @property
    def post_training_snr_improvement_db(self) -> float | None:
        if not self.post_training:
            return None
        return float(np.mean([o.snr_improvement_db for o in self.post_training]))

    @property
    def post_training_degradation_db(self) -> float | None:
        """Same as ``degradation_db`` for the trained-then-masked networks."""
        improvement = self.post_training_snr_improvement_db
        return None if improvement is None else self.baseline_improvement_db - improvement


@dataclass
class SweepTable:
    """All cells of a sweep, rows ordered by bit-width then mode."""

    cells: list[SweepCell]
    seeds: list[int]

    def cell(self, bit_width: int, mode: QuantMode) -> SweepCell:
        for cell in self.cells:
            if cell.bit_width == bit_width and cell.mode is QuantMode(mode):
                return cell
        raise KeyError(f"no cell for bit width {bit_width} / {QuantMode(mode).value}")


def _outcome(result: TrainResult) -> RunOutcome:
    metrics = evaluate(result.network, result.dataset)
    return RunOutcome(val_mse=metrics.mse, snr_improvement_db=metrics.snr_improvement_db)


def run_cell(run: TrainRunConfig) -> RunOutcome:
    """Train one configuration and evaluate the final network."""
    return _outcome(train(run))


def sweep(config: SweepConfig) -> SweepTable:
    """
    Run every (bit-width, mode, seed) combination of ``config``.

    Cells may run on a thread pool (``config.workers``); each owns its own
    state, so results do not depend on scheduling.
    """
    jobs: list[Job] = []
    for bits in config.bit_widths:
        for mode in config.modes:
            for seed in config.seeds:
                jobs.append((bits, mode, seed))
    for seed in config.seeds:
        jobs.append((None, QuantMode.CONDITIONAL, seed))

    masked: dict[Job, RunOutcome] = {}

    def run_job(job: Job) -> RunOutcome:
        bits, mode, seed = job
        if bits is not None:
            return run_cell(config.run_for(bits, mode, seed))
        base = config.run_for(FLOAT_BITS, mode, seed).model_copy(update={"n": None})
        result = train(base)
        if config.post_training:
            evaluations = post_training_sweep(result.network, result.dataset, config.bit_widths, config.modes)
            for (cell_bits, cell_mode), metrics in evaluations.items():
                masked[(cell_bits, cell_mode, seed)] = RunOutcome(
                    val_mse=metrics.mse, snr_improvement_db=metrics.snr_improvement_db
                )
        return _outcome(result)

    logger.info(
        f"Sweeping {len(config.bit_widths)} bit widths x {len(config.modes)} modes "
        f"x {len(config.seeds)} seeds ({len(jobs)} runs, {config.workers} workers)"
    )
    configure_torch()
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(run_job, jobs))
    else:
        outcomes = [run_job(job) for job in jobs]
    results = dict(zip(jobs, outcomes, strict=True))

    baseline = float(
        np.mean([results[(None, QuantMode.CONDITIONAL, seed)].snr_improvement_db for seed in config.seeds])
    )
    cells = [
        SweepCell(
            bit_width=bits,
            mode=mode,
            outcomes=[results[(bits, mode, seed)] for seed in config.seeds],
            baseline_improvement_db=baseline,
            post_training=[masked[(bits, mode, seed)] for seed in config.seeds] if config.post_training else [],
        )
        for bits in config.bit_widths
        for mode in config.modes
    ]
    return SweepTable(cells=cells, seeds=list(config.seeds))


def _optional(value: float | None) -> str:
    return "" if value is None else repr(value)


def write_sweep_csv(table: SweepTable, path: Path) -> None:
    """Write one row per cell with seed-averaged metrics; post-training columns stay empty when not run."""
    with handle_file_operation(f"write sweep table {path}"):
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(SWEEP_COLUMNS)
            for cell in table.cells:
                writer.writerow(
                    [
                        cell.bit_width,
                        cell.mode.value,
                        cell.n,
                        repr(cell.val_mse),
                        repr(cell.snr_improvement_db),
                        repr(cell.degradation_db),
                        _optional(cell.post_training_snr_improvement_db),
                        _optional(cell.post_training_degradation_db),
                    ]
                )
