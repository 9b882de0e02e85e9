#!/usr/bin/env python3

"""
Epoch-end callbacks for the training loop

The trainer calls every callback after the last minibatch of an epoch and
before metrics are recorded, so history always describes the model as it
would be deployed.
"""

from typing import Protocol

from ..core.mantissa_quant import dropped_bits_ok, quantize_model
from ..exceptions import NumericError
from ..models.quant import QuantSpec
from ..utils.logging_config import get_logger
from .network import ToyNetwork

logger = get_logger("callbacks")


class EpochCallback(Protocol):
    """Hook run at every epoch boundary."""

    def on_epoch_end(self, epoch: int, network: ToyNetwork) -> None:
        ...


class MantissaQuantizationCallback:
    """
    Quantize every weight and bias at the end of each epoch.

    The quantized values replace the network parameters, so the next epoch
    starts from them; no full-precision copy is kept.
    """

    def __init__(self, spec: QuantSpec):
        self.spec = spec

    def on_epoch_end(self, epoch: int, network: ToyNetwork) -> None:
        quantized = quantize_model(network.export_parameters(), self.spec)
        if not all(dropped_bits_ok(p, self.spec.n) for p in quantized):
            raise NumericError(f"epoch {epoch}: quantized parameters keep bits below n={self.spec.n}")
        network.load_parameters(quantized)
        logger.debug(f"Epoch {epoch}: quantized {network.parameter_count()} parameters (n={self.spec.n})")
