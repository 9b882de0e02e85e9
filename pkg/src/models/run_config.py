#!/usr/bin/env python3

"""
Pydantic models for training and sweep run configuration

Run configurations are plain key=value files parsed with python-dotenv:

    seed=0
    epochs=30
    lr=0.5
    frames=2000
    frame_len=32
    input_snr_db=3
    n=23
    mode=conditional

A missing ``n`` trains without quantization.
"""

from pathlib import Path
from typing import Any, TypeVar

from dotenv import dotenv_values
from pydantic import BaseModel, Field, field_validator

from ..utils.error_handlers import handle_config_operation
from .quant import FLOAT_BITS, MANTISSA_BITS, QuantMode, QuantSpec

ConfigT = TypeVar("ConfigT", bound="TrainRunConfig")

DEFAULT_BIT_WIDTHS = [32, 26, 20, 14, 12, 11, 10, 9]
MIN_BIT_WIDTH = FLOAT_BITS - MANTISSA_BITS


class DatasetConfig(BaseModel):
    """Synthetic denoising dataset descriptor."""

    frames: int = Field(2000, gt=1, description="Total number of frame pairs")
    frame_len: int = Field(32, gt=0, description="Samples per frame")
    input_snr_db: float = Field(3.0, description="Target input SNR; inf means noise-free")
    validation_fraction: float = Field(0.2, gt=0.0, lt=1.0)
    max_tones: int = Field(3, ge=1, description="Sinusoids mixed into each clean frame")

    model_config = {"frozen": True}

    @property
    def noise_free(self) -> bool:
        return self.input_snr_db == float("inf")


class TrainRunConfig(BaseModel):
    """Configuration of one quantization-aware training run."""

    seed: int = 0
    epochs: int = Field(30, gt=0)
    lr: float = Field(0.5, gt=0.0)
    frames: int = Field(2000, gt=1)
    frame_len: int = Field(32, gt=0)
    input_snr_db: float = 3.0
    n: int | None = Field(None, ge=0, le=MANTISSA_BITS)
    mode: QuantMode = QuantMode.CONDITIONAL
    batch_size: int = Field(4, gt=0)
    hidden: int = Field(64, gt=0)
    validation_fraction: float = Field(0.2, gt=0.0, lt=1.0)

    model_config = {"extra": "forbid", "frozen": True}

    @field_validator("n", mode="before")
    @classmethod
    def blank_means_unquantized(cls, v: Any) -> Any:
        if isinstance(v, str) and v.strip().lower() in ("", "none"):
            return None
        return v

    @field_validator("mode", mode="before")
    @classmethod
    def normalize_mode(cls, v: Any) -> Any:
        return v.strip().lower() if isinstance(v, str) else v

    @property
    def quant_spec(self) -> QuantSpec | None:
        if self.n is None:
            return None
        return QuantSpec(n=self.n, mode=self.mode)

    @property
    def dataset(self) -> DatasetConfig:
        return DatasetConfig(
            frames=self.frames,
            frame_len=self.frame_len,
            input_snr_db=self.input_snr_db,
            validation_fraction=self.validation_fraction,
        )


def _split_list(v: Any) -> Any:
    if isinstance(v, str):
        return [item.strip() for item in v.split(",") if item.strip()]
    return v


class SweepConfig(TrainRunConfig):
    """
    Configuration of a bit-width x mode sweep.

    ``seeds`` is either a comma list or a single count (seeds seed..seed+count-1).
    """

    bit_widths: list[int] = Field(default_factory=lambda: list(DEFAULT_BIT_WIDTHS))
    modes: list[QuantMode] = Field(default_factory=lambda: [QuantMode.CONDITIONAL, QuantMode.CHOP])
    seeds: list[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4])
    workers: int = Field(1, gt=0)
    post_training: bool = Field(False, description="Also mask the unquantized runs after training")

    @field_validator("bit_widths", mode="before")
    @classmethod
    def parse_bit_widths(cls, v: Any) -> Any:
        return _split_list(v)

    @field_validator("bit_widths")
    @classmethod
    def check_bit_widths(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("at least one bit width is required")
        for bits in v:
            if not MIN_BIT_WIDTH <= bits <= FLOAT_BITS:
                raise ValueError(f"bit width {bits} outside [{MIN_BIT_WIDTH}, {FLOAT_BITS}]")
        return v

    @field_validator("modes", mode="before")
    @classmethod
    def parse_modes(cls, v: Any) -> Any:
        items = _split_list(v)
        if isinstance(items, list):
            return [item.lower() if isinstance(item, str) else item for item in items]
        return items

    @field_validator("seeds", mode="before")
    @classmethod
    def parse_seeds(cls, v: Any, info) -> Any:
        if isinstance(v, str) and "," not in v:
            count = int(v.strip())
            if count <= 0:
                raise ValueError("seed count must be positive")
            start = info.data.get("seed", 0)
            return list(range(start, start + count))
        return _split_list(v)

    def run_for(self, bits: int, mode: QuantMode, seed: int) -> TrainRunConfig:
        """Single-run configuration of one sweep cell."""
        base = self.model_dump(include=set(TrainRunConfig.model_fields))
        base.update(seed=seed, n=FLOAT_BITS - bits, mode=mode)
        return TrainRunConfig(**base)


def load_run_config(path: Path, model: type[ConfigT] = TrainRunConfig) -> ConfigT:
    """
    Parse a key=value run configuration file.

    Raises:
        ConfigurationError: unreadable file, key without value, or invalid values
    """
    with handle_config_operation(f"load {path}"):
        if not Path(path).is_file():
            raise FileNotFoundError(f"config file not found: {path}")
        raw = dotenv_values(path)
        values: dict[str, Any] = {}
        for key, value in raw.items():
            if value is None:
                raise ValueError(f"key '{key}' has no value")
            values[key.strip().lower()] = value
        return model.model_validate(values)
