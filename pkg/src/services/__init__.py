#!/usr/bin/env python3

"""
Service layer for the EOFP toolkit

This module contains pure business logic extracted from commands,
enabling better testing and separation of concerns.
"""

from .dtos import (
    DequantizeResult,
    InspectResult,
    QuantizeResult,
    SweepOutcome,
    TrainingOutcome,
)
from .model_service import ModelService
from .training_service import TrainingService

__all__ = [
    # DTOs
    "QuantizeResult",
    "DequantizeResult",
    "InspectResult",
    "TrainingOutcome",
    "SweepOutcome",
    # Services
    "ModelService",
    "TrainingService",
]
