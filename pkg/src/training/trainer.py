#!/usr/bin/env python3

"""
Quantization-aware training loop

Each epoch runs minibatch SGD on the MSE loss in full precision, starting
from the parameters left by the previous epoch boundary. Epoch callbacks
(mantissa quantization when configured) then rewrite the parameters and
the epoch's metrics are recorded.
"""

import csv
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from torch import nn

from ..exceptions import DivergenceError, ValidationError
from ..models.reports import EpochRecord, EvaluationResult
from ..models.run_config import TrainRunConfig
from ..utils.error_handlers import handle_file_operation
from ..utils.logging_config import get_logger
from .callbacks import EpochCallback, MantissaQuantizationCallback
from .dataset import DenoisingDataset, synth_dataset
from .metrics import mse, snr_db
from .network import ToyNetwork, configure_torch

logger = get_logger("trainer")

HISTORY_COLUMNS = ["epoch", "train_mse", "val_mse", "val_snr_db"]


@dataclass
class TrainResult:
    """Final network, per-epoch history and the dataset it was trained on."""

    network: ToyNetwork
    history: list[EpochRecord]
    dataset: DenoisingDataset

    @property
    def final(self) -> EpochRecord:
        return self.history[-1]


def evaluate(network: ToyNetwork, dataset: DenoisingDataset) -> EvaluationResult:
    """
    Validation MSE and output SNR of ``network``.

    Raises:
        ValidationError: network and frame sizes differ
    """
    if network.input_size != dataset.frame_len or network.output_size != dataset.frame_len:
        raise ValidationError(
            f"network maps {network.input_size}->{network.output_size}, frames have {dataset.frame_len} samples"
        )
    estimate = network.predict(dataset.val_noisy)
    return EvaluationResult(
        mse=mse(dataset.val_clean, estimate),
        output_snr_db=snr_db(dataset.val_clean, estimate),
        input_snr_db=dataset.input_snr_db,
    )


def _seeds(seed: int) -> tuple[int, np.random.Generator, np.random.Generator]:
    data_seq, init_seq, shuffle_seq = np.random.SeedSequence(seed).spawn(3)
    data_seed = int(data_seq.generate_state(1)[0])
    return data_seed, np.random.default_rng(init_seq), np.random.default_rng(shuffle_seq)


def train(
    run: TrainRunConfig,
    dataset: DenoisingDataset | None = None,
    callbacks: Sequence[EpochCallback] | None = None,
) -> TrainResult:
    """
    Train the toy network for ``run.epochs`` epochs.

    Args:
        run: run configuration; a quant spec adds the quantization callback
        dataset: optional pre-built dataset (synthesized from the seed otherwise)
        callbacks: extra epoch callbacks, run after quantization

    Raises:
        DivergenceError: non-finite loss or parameters, with the epoch index
        NumericError: quantization failure (e.g. exponent overflow)
    """
    data_seed, init_rng, shuffle_rng = _seeds(run.seed)
    if dataset is None:
        dataset = synth_dataset(data_seed, run.dataset)

    network = ToyNetwork.build(dataset.frame_len, run.hidden, init_rng)
    hooks: list[EpochCallback] = []
    spec = run.quant_spec
    if spec is not None:
        hooks.append(MantissaQuantizationCallback(spec))
    hooks.extend(callbacks or [])

    configure_torch()
    optimizer = torch.optim.SGD(network.parameters(), lr=run.lr)
    criterion = nn.MSELoss()
    train_noisy = torch.from_numpy(dataset.train_noisy)
    train_clean = torch.from_numpy(dataset.train_clean)
    train_count = dataset.train_noisy.shape[0]
    history: list[EpochRecord] = []
    for epoch in range(1, run.epochs + 1):
        order = shuffle_rng.permutation(train_count)
        for start in range(0, train_count, run.batch_size):
            batch = torch.from_numpy(order[start : start + run.batch_size])
            optimizer.zero_grad()
            loss = criterion(network(train_noisy[batch]), train_clean[batch])
            if not torch.isfinite(loss):
                raise DivergenceError(f"loss became non-finite in epoch {epoch}", epoch=epoch)
            loss.backward()
            optimizer.step()

        if not network.all_finite():
            raise DivergenceError(f"parameters became non-finite in epoch {epoch}", epoch=epoch)
        for hook in hooks:
            hook.on_epoch_end(epoch, network)

        result = evaluate(network, dataset)
        record = EpochRecord(
            epoch=epoch,
            train_mse=mse(dataset.train_clean, network.predict(dataset.train_noisy)),
            val_mse=result.mse,
            val_snr_db=result.output_snr_db,
        )
        if not all(np.isfinite([record.train_mse, record.val_mse, record.val_snr_db])):
            raise DivergenceError(f"metrics became non-finite in epoch {epoch}", epoch=epoch)
        history.append(record)
        logger.debug(
            f"Epoch {epoch}: train_mse={record.train_mse:.6g} val_mse={record.val_mse:.6g} "
            f"val_snr={record.val_snr_db:.3f} dB"
        )

    logger.info(
        f"Trained seed={run.seed} n={run.n} mode={run.mode.value}: "
        f"final val_mse={history[-1].val_mse:.6g}"
    )
    return TrainResult(network=network, history=history, dataset=dataset)


def write_history_csv(history: Sequence[EpochRecord], path: Path) -> None:
    """Write epoch,train_mse,val_mse,val_snr_db rows."""
    with handle_file_operation(f"write history {path}"):
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(HISTORY_COLUMNS)
            for record in history:
                writer.writerow(
                    [record.epoch, repr(record.train_mse), repr(record.val_mse), repr(record.val_snr_db)]
                )
