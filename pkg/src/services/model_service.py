#!/usr/bin/env python3

"""
Model Service - Business logic for model file operations

Reads, quantizes, packs, decodes and inspects model files, returning
DTOs for the command layer to render.
"""

from pathlib import Path

from ..core import exponent_quant, mantissa_quant
from ..core.config import Config
from ..core.model_store import (
    ContainerKind,
    load_bytes,
    load_model,
    save_bytes,
    size_report,
    write_mantissa_model,
    write_model,
    write_raw_model,
)
from ..exceptions import NumericError, ValidationError
from ..models.quant import ExponentRange, QuantSpec
from ..utils.logging_config import get_logger
from .dtos import DequantizeResult, InspectResult, QuantizeResult

logger = get_logger("model_service")


class ModelService:
    """Pure business logic for model files."""

    def __init__(self, config: Config):
        """
        Initialize ModelService.

        Args:
            config: Configuration instance
        """
        self.config = config

    def quantize_file(
        self,
        input_path: Path,
        output_path: Path,
        spec: QuantSpec,
        exponent_stage: bool = True,
    ) -> QuantizeResult:
        """
        Mantissa-quantize a model and write it packed.

        Args:
            input_path: model file (raw format, or any container)
            output_path: destination
            spec: mantissa quantization spec
            exponent_stage: also apply exponent quantization

        Returns:
            QuantizeResult with the size report for this model
        """
        loaded = load_model(load_bytes(input_path))
        quantized = mantissa_quant.quantize_model(loaded.tensors, spec)

        exponent_range: ExponentRange | None
        if exponent_stage:
            exponent_range, packed = exponent_quant.quantize_model(quantized, spec.n)
            data = write_model(exponent_range, packed, spec.n)
        else:
            exponent_range = self._try_scan(quantized)
            data = write_mantissa_model(quantized, spec.n)

        parameter_count = loaded.parameter_count
        report = None
        if exponent_range is not None and parameter_count > 0:
            report = size_report(parameter_count, spec.n, exponent_range.length)

        save_bytes(output_path, data)
        logger.info(
            f"Quantized {input_path} -> {output_path}: n={spec.n} mode={spec.mode.value} "
            f"exponent_stage={exponent_stage}"
        )
        return QuantizeResult(
            output_path=Path(output_path),
            spec=spec,
            exponent_stage=exponent_stage,
            tensor_count=len(loaded.tensors),
            parameter_count=parameter_count,
            bytes_written=len(data),
            exponent_range=exponent_range,
            report=report,
        )

    def dequantize_file(self, input_path: Path, output_path: Path) -> DequantizeResult:
        """Decode any container and write its values in the raw format."""
        loaded = load_model(load_bytes(input_path))
        data = write_raw_model(loaded.tensors)
        save_bytes(output_path, data)
        return DequantizeResult(
            output_path=Path(output_path),
            source_kind=loaded.kind,
            n=loaded.n,
            tensor_count=len(loaded.tensors),
            parameter_count=loaded.parameter_count,
            bytes_written=len(data),
        )

    def inspect_file(self, path: Path) -> InspectResult:
        """Header fields, exponent range and log2 histogram of a model file."""
        data = load_bytes(path)
        loaded = load_model(data)
        exponent_range = loaded.exponent_range
        if loaded.kind is not ContainerKind.EOFP:
            exponent_range = self._try_scan(loaded.tensors)
        histogram, zeros = exponent_quant.log2_histogram(loaded.tensors)
        return InspectResult(
            path=Path(path),
            kind=loaded.kind,
            version=loaded.header.version,
            n=loaded.n,
            shapes=list(loaded.header.shapes),
            parameter_count=loaded.parameter_count,
            file_size=len(data),
            exponent_range=exponent_range,
            histogram=histogram,
            zero_count=zeros,
        )

    @staticmethod
    def _try_scan(tensors) -> ExponentRange | None:
        """Exponent range when one exists (a nonzero, finite, normal model)."""
        try:
            return exponent_quant.scan_range(tensors)
        except ValidationError:
            return None
        except NumericError as e:
            logger.info(f"No exponent range: {e}")
            return None
