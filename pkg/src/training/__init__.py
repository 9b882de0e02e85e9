"""
Training module for the EOFP toolkit

Toy denoising network, synthetic data, metrics and the
quantization-aware training loop with its sweep.
"""

from .callbacks import EpochCallback, MantissaQuantizationCallback
from .dataset import DenoisingDataset, synth_dataset
from .network import ToyNetwork, configure_torch
from .post_training import mask_network, post_training_sweep
from .sweep import SweepCell, SweepTable, sweep
from .trainer import TrainResult, evaluate, train

__all__ = [
    'EpochCallback', 'MantissaQuantizationCallback',
    'DenoisingDataset', 'synth_dataset',
    'ToyNetwork', 'configure_torch',
    'mask_network', 'post_training_sweep',
    'TrainResult', 'train', 'evaluate',
    'SweepCell', 'SweepTable', 'sweep',
]
