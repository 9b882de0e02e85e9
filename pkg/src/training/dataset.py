#!/usr/bin/env python3

"""
Synthetic frame-denoising dataset

Clean frames are Hann-windowed mixtures of random sinusoids; noisy frames
add white Gaussian noise scaled per frame so that every frame, and hence
the whole set, sits at the target input SNR.
"""

from dataclasses import dataclass

import numpy as np

from ..models.run_config import DatasetConfig
from .metrics import snr_db


@dataclass(frozen=True)
class DenoisingDataset:
    """Paired (noisy, clean) frames with a fixed train/validation split."""

    train_noisy: np.ndarray
    train_clean: np.ndarray
    val_noisy: np.ndarray
    val_clean: np.ndarray

    @property
    def frame_len(self) -> int:
        return int(self.train_clean.shape[1])

    @property
    def input_snr_db(self) -> float:
        """Validation-set SNR of the noisy input."""
        return snr_db(self.val_clean, self.val_noisy)


def _clean_frames(rng: np.random.Generator, config: DatasetConfig) -> np.ndarray:
    t = np.arange(config.frame_len, dtype=np.float64)
    shape = (config.frames, config.max_tones)
    active = np.arange(config.max_tones)[None, :] < rng.integers(1, config.max_tones + 1, size=(config.frames, 1))
    amplitude = rng.uniform(0.2, 1.0, size=shape) * active
    cycles = rng.uniform(0.5, max(config.frame_len / 4.0, 1.0), size=shape)
    phase = rng.uniform(0.0, 2.0 * np.pi, size=shape)

    angle = 2.0 * np.pi * cycles[:, :, None] * t[None, None, :] / config.frame_len + phase[:, :, None]
    mixture = np.sum(amplitude[:, :, None] * np.sin(angle), axis=1)
    return mixture * np.hanning(config.frame_len)[None, :]


def synth_dataset(seed: int, config: DatasetConfig) -> DenoisingDataset:
    """
    Generate a deterministic dataset for ``seed``.

    The last ``validation_fraction`` of the frames form the validation set.
    """
    rng = np.random.default_rng(seed)
    clean = _clean_frames(rng, config)

    if config.noise_free:
        noisy = clean.copy()
    else:
        noise = rng.standard_normal(clean.shape)
        clean_power = np.mean(clean**2, axis=1, keepdims=True)
        noise_power = np.mean(noise**2, axis=1, keepdims=True)
        target = clean_power / (10.0 ** (config.input_snr_db / 10.0))
        noisy = clean + noise * np.sqrt(target / np.maximum(noise_power, np.finfo(np.float64).tiny))

    clean = clean.astype(np.float32)
    noisy = noisy.astype(np.float32)

    val_count = min(max(1, int(round(config.frames * config.validation_fraction))), config.frames - 1)
    split = config.frames - val_count
    return DenoisingDataset(
        train_noisy=noisy[:split],
        train_clean=clean[:split],
        val_noisy=noisy[split:],
        val_clean=clean[split:],
    )
