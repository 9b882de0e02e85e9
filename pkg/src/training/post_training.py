#!/usr/bin/env python3

"""
Post-training mantissa masking

Quantizes a network that was trained in full precision, once, with no
retraining, so its accuracy can be set against the quantization-aware
runs of the same seeds.
"""

from collections.abc import Sequence

from ..core.mantissa_quant import quantize_model
from ..models.quant import QuantMode, QuantSpec
from ..models.reports import EvaluationResult
from ..utils.logging_config import get_logger
from .dataset import DenoisingDataset
from .network import ToyNetwork
from .trainer import evaluate

logger = get_logger("post_training")


def mask_network(network: ToyNetwork, spec: QuantSpec) -> ToyNetwork:
    """Copy of ``network`` with every weight and bias mantissa-quantized; the original is untouched."""
    masked = quantize_model(network.export_parameters(), spec)
    return ToyNetwork.from_parameters(masked, network.activations)


def post_training_sweep(
    network: ToyNetwork,
    dataset: DenoisingDataset,
    bit_widths: Sequence[int],
    modes: Sequence[QuantMode],
) -> dict[tuple[int, QuantMode], EvaluationResult]:
    """Validation metrics of ``network`` masked at each (bit-width, mode)."""
    results = {}
    for bits in bit_widths:
        for mode in modes:
            spec = QuantSpec.from_bit_width(bits, mode)
            results[(bits, QuantMode(mode))] = evaluate(mask_network(network, spec), dataset)
    logger.debug(f"Masked trained network at {len(results)} settings")
    return results
