#!/usr/bin/env python3

"""
Pydantic models for the EOFP toolkit

Provides type-safe, validated data structures for quantization settings,
size reports and run configurations.
"""

from .quant import (
    ExponentRange,
    FloatFields,
    PackedCode,
    PackedTensor,
    QuantMode,
    QuantSpec,
    exponent_code_length,
)
from .reports import EpochRecord, EvaluationResult, SizeReport
from .run_config import SweepConfig, TrainRunConfig, load_run_config

__all__ = [
    # Quantization
    "QuantMode",
    "QuantSpec",
    "ExponentRange",
    "FloatFields",
    "PackedCode",
    "PackedTensor",
    "exponent_code_length",
    # Reports
    "SizeReport",
    "EpochRecord",
    "EvaluationResult",
    # Run configuration
    "TrainRunConfig",
    "SweepConfig",
    "load_run_config",
]
