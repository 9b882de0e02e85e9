#!/usr/bin/env python3

"""
Pydantic models for size accounting and evaluation results
"""

from decimal import ROUND_HALF_UP, Decimal

from pydantic import BaseModel, Field, computed_field

from .quant import FLOAT_BITS, MANTISSA_BITS

BYTES_PER_KB = 1024


def round_half_up(value: float, places: int = 0) -> Decimal:
    """Round ``value`` half away from zero at ``places`` decimals."""
    quantum = Decimal(1).scaleb(-places)
    return Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP)


def _kb(parameter_count: int, bits_per_param: int) -> float:
    return parameter_count * bits_per_param / 8 / BYTES_PER_KB


class SizeReport(BaseModel):
    """
    Model size at each quantization stage.

    KB is 1024 bytes. Integer KB figures use round-half-up; the fractions
    of the original size are computed from those integer figures.
    """

    parameter_count: int = Field(..., gt=0)
    n: int = Field(..., ge=0, le=MANTISSA_BITS)
    length: int = Field(..., ge=1, le=8, description="Exponent code length in bits")

    model_config = {"frozen": True}

    @computed_field
    @property
    def full_precision_kb(self) -> float:
        return _kb(self.parameter_count, FLOAT_BITS)

    @computed_field
    @property
    def mantissa_quantized_kb(self) -> float:
        return _kb(self.parameter_count, FLOAT_BITS - self.n)

    @computed_field
    @property
    def exponent_quantized_kb(self) -> float:
        return _kb(self.parameter_count, self.exponent_stage_bits)

    @property
    def exponent_stage_bits(self) -> int:
        return 1 + self.length + (MANTISSA_BITS - self.n)

    @property
    def full_precision_kb_int(self) -> int:
        return int(round_half_up(self.full_precision_kb))

    @property
    def mantissa_quantized_kb_int(self) -> int:
        return int(round_half_up(self.mantissa_quantized_kb))

    @property
    def exponent_quantized_kb_int(self) -> int:
        return int(round_half_up(self.exponent_quantized_kb))

    @property
    def mantissa_fraction_pct(self) -> float:
        """Mantissa-stage size as a percentage of the original."""
        return self._fraction(self.mantissa_quantized_kb_int)

    @property
    def final_fraction_pct(self) -> float:
        """Mantissa+exponent size as a percentage of the original."""
        return self._fraction(self.exponent_quantized_kb_int)

    def _fraction(self, stage_kb: int) -> float:
        full = self.full_precision_kb_int
        if full == 0:
            return 100.0
        return float(round_half_up(stage_kb * 100 / full, 2))

    @computed_field
    @property
    def compression_ratio(self) -> float:
        """Original size over mantissa-stage size (32 / bit-width)."""
        return FLOAT_BITS / (FLOAT_BITS - self.n)

    @property
    def total_compression_ratio(self) -> float:
        """Original size over the fully packed size."""
        return FLOAT_BITS / self.exponent_stage_bits


class EpochRecord(BaseModel):
    """Metrics recorded after one epoch (post-quantization)."""

    epoch: int
    train_mse: float
    val_mse: float
    val_snr_db: float


class EvaluationResult(BaseModel):
    """Validation metrics of a network."""

    mse: float
    output_snr_db: float
    input_snr_db: float

    @property
    def snr_improvement_db(self) -> float:
        return self.output_snr_db - self.input_snr_db
