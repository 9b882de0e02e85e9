#!/usr/bin/env python3

"""
Tests for ModelService

Critical path tests for quantize, dequantize and inspect.
"""

import numpy as np
import pytest

from src.core.float_codec import to_bits
from src.core.mantissa_quant import quantize_model
from src.core.model_store import ContainerKind, load_bytes, read_raw_model, save_bytes, write_raw_model
from src.exceptions import BadMagicError, DenormalValueError, FileOperationError
from src.models.quant import QuantMode, QuantSpec
from src.services import ModelService


def _same_bits(a, b) -> bool:
    return all(np.array_equal(to_bits(x), to_bits(y)) for x, y in zip(a, b, strict=True))


def test_model_service_initialization(mock_config):
    """Test ModelService initialization."""
    service = ModelService(mock_config)

    assert service.config == mock_config


def test_quantize_file(model_service, raw_model_file, temp_dir, sample_model):
    """Test quantizing a raw model writes an EOFP container with a size report."""
    output = temp_dir / "model.eofp"

    result = model_service.quantize_file(raw_model_file, output, QuantSpec(n=23))

    assert output.exists()
    assert result.bytes_written == output.stat().st_size
    assert result.tensor_count == 4
    assert result.parameter_count == sum(t.size for t in sample_model)
    assert result.exponent_range is not None
    assert result.report is not None
    assert result.report.length == result.exponent_range.length


def test_quantize_dequantize_roundtrip(model_service, raw_model_file, temp_dir, sample_model):
    """Test dequantizing returns the mantissa-quantized values."""
    spec = QuantSpec(n=12, mode=QuantMode.CHOP)
    packed = temp_dir / "model.eofp"
    restored = temp_dir / "restored.raw"

    model_service.quantize_file(raw_model_file, packed, spec)
    result = model_service.dequantize_file(packed, restored)

    assert result.source_kind is ContainerKind.EOFP
    assert result.n == 12
    assert _same_bits(read_raw_model(load_bytes(restored)), quantize_model(sample_model, spec))


def test_requantizing_is_byte_identical(model_service, raw_model_file, temp_dir):
    """Test quantize -> dequantize -> quantize reproduces the same file."""
    spec = QuantSpec(n=20)
    first = temp_dir / "first.eofp"
    middle = temp_dir / "middle.raw"
    second = temp_dir / "second.eofp"

    model_service.quantize_file(raw_model_file, first, spec)
    model_service.dequantize_file(first, middle)
    model_service.quantize_file(middle, second, spec)

    assert load_bytes(first) == load_bytes(second)


def test_identity_without_exponent_stage(model_service, raw_model_file, temp_dir):
    """Test n=0 without the exponent stage copies the raw file exactly."""
    output = temp_dir / "copy.raw"

    result = model_service.quantize_file(raw_model_file, output, QuantSpec(n=0), exponent_stage=False)

    assert load_bytes(output) == load_bytes(raw_model_file)
    assert result.exponent_range is not None


def test_mantissa_only_container(model_service, raw_model_file, temp_dir):
    """Test skipping the exponent stage stores 32 - n bits per parameter."""
    output = temp_dir / "model.mq"

    model_service.quantize_file(raw_model_file, output, QuantSpec(n=23), exponent_stage=False)
    info = model_service.inspect_file(output)

    assert info.kind is ContainerKind.MANTISSA
    assert info.n == 23


def test_denormals_rejected_when_n0_keeps_them(model_service, temp_dir):
    """Test the exponent stage refuses denormals that n=0 leaves in place."""
    source = temp_dir / "denormal.raw"
    save_bytes(source, write_raw_model([np.float32([1.0, 1e-40])]))

    with pytest.raises(DenormalValueError):
        model_service.quantize_file(source, temp_dir / "out.eofp", QuantSpec(n=0))


def test_inspect_raw(model_service, temp_dir, example_model):
    """Test inspecting a raw model scans its exponent range."""
    source = temp_dir / "example.raw"
    save_bytes(source, write_raw_model(example_model))

    info = model_service.inspect_file(source)

    assert info.kind is ContainerKind.RAW
    assert info.n == 0
    assert info.shapes == [(4,)]
    assert str(info.exponent_range) == "{0, -29, 5}"
    assert info.zero_count == 1


def test_inspect_histogram_conserves_parameters(model_service, raw_model_file, temp_dir):
    """Test histogram buckets plus zeros cover every parameter."""
    output = temp_dir / "model.eofp"
    model_service.quantize_file(raw_model_file, output, QuantSpec(n=23))

    info = model_service.inspect_file(output)

    assert info.kind is ContainerKind.EOFP
    assert info.histogram_total == info.parameter_count
    assert info.file_size == output.stat().st_size


def test_inspect_all_zero_model(model_service, temp_dir):
    """Test an all-zero model has no exponent range."""
    source = temp_dir / "zeros.raw"
    save_bytes(source, write_raw_model([np.zeros(5, dtype=np.float32)]))

    info = model_service.inspect_file(source)

    assert info.exponent_range is None
    assert info.zero_count == 5


def test_inspect_raw_with_denormal(model_service, temp_dir):
    """Test a denormal in a raw model leaves no range but still yields the histogram."""
    source = temp_dir / "denormal.raw"
    save_bytes(source, write_raw_model([np.float32([1.0, 1e-40, 0.5])]))

    info = model_service.inspect_file(source)

    assert info.kind is ContainerKind.RAW
    assert info.exponent_range is None
    assert info.histogram_total == info.parameter_count == 3
    assert info.histogram[-127] == 1


def test_missing_input(model_service, temp_dir):
    """Test a missing input raises FileOperationError."""
    with pytest.raises(FileOperationError):
        model_service.quantize_file(temp_dir / "absent.raw", temp_dir / "out.eofp", QuantSpec(n=1))


def test_garbage_input(model_service, temp_dir):
    """Test a file without the magic raises BadMagicError."""
    source = temp_dir / "garbage.bin"
    source.write_bytes(b"not a model at all")

    with pytest.raises(BadMagicError):
        model_service.inspect_file(source)
