#!/usr/bin/env python3

"""
Data Transfer Objects (DTOs) for service layer

These dataclasses provide structured, typed results from service operations,
decoupling business logic from UI presentation.
"""

from dataclasses import dataclass, field
from pathlib import Path

from ..core.model_store import ContainerKind
from ..models.quant import ExponentRange, QuantSpec
from ..models.reports import EpochRecord, EvaluationResult, SizeReport
from ..models.run_config import SweepConfig, TrainRunConfig
from ..training.sweep import SweepTable


@dataclass
class QuantizeResult:
    """Result of quantizing a model file."""

    output_path: Path
    spec: QuantSpec
    exponent_stage: bool
    tensor_count: int
    parameter_count: int
    bytes_written: int
    exponent_range: ExponentRange | None
    report: SizeReport | None


@dataclass
class DequantizeResult:
    """Result of decoding a model file back to full precision."""

    output_path: Path
    source_kind: ContainerKind
    n: int
    tensor_count: int
    parameter_count: int
    bytes_written: int


@dataclass
class InspectResult:
    """Header fields and parameter statistics of a model file."""

    path: Path
    kind: ContainerKind
    version: int
    n: int
    shapes: list[tuple[int, ...]]
    parameter_count: int
    file_size: int
    exponent_range: ExponentRange | None
    histogram: dict[int, int] = field(default_factory=dict)
    zero_count: int = 0

    @property
    def histogram_total(self) -> int:
        return sum(self.histogram.values()) + self.zero_count


@dataclass
class TrainingOutcome:
    """Result of a training run."""

    run: TrainRunConfig
    history: list[EpochRecord]
    evaluation: EvaluationResult
    history_path: Path | None
    model_path: Path | None
    exponent_stage_mse_delta: float | None = None


@dataclass
class SweepOutcome:
    """Result of a sweep."""

    config: SweepConfig
    table: SweepTable
    table_path: Path | None
