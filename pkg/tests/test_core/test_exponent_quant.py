#!/usr/bin/env python3

"""
Tests for src.core.exponent_quant module.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.exponent_quant import (
    decode_model,
    decode_param,
    decode_tensor,
    encode_param,
    encode_tensor,
    log2_histogram,
    quantize_model,
    scan_range,
)
from src.core.float_codec import to_bits
from src.core.mantissa_quant import quantize_model as mantissa_quantize_model
from src.exceptions import DenormalValueError, NonFiniteValueError, NumericError, ValidationError
from src.models.quant import ExponentRange, PackedCode, PackedTensor, QuantSpec


def _bits_equal(a, b) -> bool:
    return all(np.array_equal(to_bits(x), to_bits(y)) for x, y in zip(a, b, strict=True))


class TestScanRange:
    """Test {max, min, len} scanning."""

    def test_example_range(self, example_model):
        """Test exponents 0 and -29 give {0, -29, 5}."""
        exponent_range = scan_range(example_model)

        assert (exponent_range.max_exp, exponent_range.min_exp, exponent_range.length) == (0, -29, 5)
        assert str(exponent_range) == "{0, -29, 5}"

    def test_recurrent_model_range(self):
        """Test a [-23, 0] exponent span needs 5 bits."""
        model = [np.float32([2.0**-23, 0.75]), np.float32([[1.0, -2.0**-10]])]
        exponent_range = scan_range(model)
        assert (exponent_range.max_exp, exponent_range.min_exp, exponent_range.length) == (0, -23, 5)

    def test_single_value(self):
        """Test a single 1.0 gives {0, 0, 1}."""
        exponent_range = scan_range([np.float32([1.0])])
        assert (exponent_range.max_exp, exponent_range.min_exp, exponent_range.length) == (0, 0, 1)

    def test_length_counts_the_zero_code(self):
        """Test a span of 2^k - 1 exponents still fits k bits, 2^k needs k + 1."""
        assert scan_range([np.float32([1.0, 2.0**-6])]).length == 3
        assert scan_range([np.float32([1.0, 2.0**-7])]).length == 4

    def test_all_zero_model(self):
        """Test an all-zero model has no range."""
        with pytest.raises(ValidationError):
            scan_range([np.zeros(4, dtype=np.float32), np.float32([-0.0])])

    def test_denormal_rejected(self):
        """Test denormals are rejected with tensor and element index."""
        with pytest.raises(DenormalValueError) as exc_info:
            scan_range([np.float32([1.0]), np.float32([0.5, 1e-40])])
        assert exc_info.value.tensor == 1
        assert exc_info.value.index == 1

    def test_non_finite_rejected(self):
        """Test NaN is rejected."""
        with pytest.raises(NonFiniteValueError):
            scan_range([np.float32([np.nan])])


class TestCodes:
    """Test encoding and decoding of individual parameters."""

    def test_example_codes(self, example_model):
        """Test zero, the minimum and the maximum exponent map to 0, 1 and 30."""
        exponent_range = scan_range(example_model)

        assert encode_param(0.0, exponent_range, 0).exp_code == 0
        assert encode_param(2.0**-29, exponent_range, 0).exp_code == 1
        assert encode_param(1.0, exponent_range, 0).exp_code == 30

    def test_negative_zero_code(self):
        """Test -0.0 encodes as sign 1, code 0 and decodes to -0.0."""
        exponent_range = ExponentRange.from_bounds(0, -3)
        code = encode_param(-0.0, exponent_range, 23)

        assert code == PackedCode(sign=1, exp_code=0, residual=0)
        assert int(to_bits(decode_param(code, exponent_range, 23))[0]) == 0x80000000

    def test_residual_keeps_mantissa_bits(self):
        """Test the residual holds the kept mantissa bits."""
        exponent_range = ExponentRange.from_bounds(0, -1)
        code = encode_param(1.5, exponent_range, 21)
        assert code.residual == 0b10
        assert decode_param(code, exponent_range, 21) == np.float32(1.5)

    def test_unquantized_residue_rejected(self):
        """Test values with bits below n are rejected."""
        exponent_range = ExponentRange.from_bounds(0, 0)
        with pytest.raises(ValidationError):
            encode_param(1.0 + 2.0**-23, exponent_range, 23)

    def test_exponent_outside_range_rejected(self):
        """Test encoding outside the scanned range fails."""
        exponent_range = ExponentRange.from_bounds(0, -2)
        with pytest.raises(ValidationError):
            encode_param(8.0, exponent_range, 23)

    def test_decode_param_checks_widths(self):
        """Test field values wider than their bit widths are rejected."""
        exponent_range = ExponentRange.from_bounds(0, -2)
        with pytest.raises(ValidationError):
            decode_param(PackedCode(sign=0, exp_code=4, residual=0), exponent_range, 23)
        with pytest.raises(ValidationError):
            decode_param(PackedCode(sign=0, exp_code=1, residual=2), exponent_range, 22)

    def test_decode_rejects_special_exponent(self):
        """Test a code landing on biased exponent 255 is a numeric error."""
        exponent_range = ExponentRange.from_bounds(127, 120)
        packed = PackedTensor(
            shape=(1,),
            sign=np.zeros(1, dtype=np.uint8),
            exp_code=np.array([9], dtype=np.uint16),
            residual=np.zeros(1, dtype=np.uint32),
        )
        with pytest.raises(NumericError):
            decode_tensor(packed, exponent_range, 23)


class TestLossless:
    """Test that exponent quantization loses nothing."""

    @pytest.mark.parametrize("n", [1, 8, 16, 22, 23])
    def test_thousand_random_models(self, n):
        """Test decode(encode(M)) == M bit for bit over random quantized models."""
        rng = np.random.default_rng(n)
        spec = QuantSpec(n=n)
        for _ in range(1000):
            sizes = rng.integers(1, 20, size=rng.integers(1, 4))
            scale = 2.0 ** rng.integers(-20, 5)
            model = [rng.normal(0.0, scale, size=int(s)).astype(np.float32) for s in sizes]
            model[0][0] = 0.0
            model[0][-1] += np.float32(scale)
            quantized = mantissa_quantize_model(model, spec)

            exponent_range, packed = quantize_model(quantized, n)
            assert _bits_equal(decode_model(exponent_range, packed, n), quantized)

    @given(
        st.lists(st.floats(width=32, allow_nan=False, allow_infinity=False, allow_subnormal=False), min_size=1),
        st.integers(min_value=1, max_value=23),
    )
    def test_roundtrip_property(self, values, n):
        """Test every nonzero mantissa-quantized vector survives the exponent stage."""
        array = np.float32(values)
        if n == 23:
            array = np.clip(array, -2.0**127, 2.0**127).astype(np.float32)
        quantized = mantissa_quantize_model([array], QuantSpec(n=n))
        if not np.any(quantized[0]):
            return
        exponent_range, packed = quantize_model(quantized, n)
        assert _bits_equal(decode_model(exponent_range, packed, n), quantized)

    def test_shapes_and_order_preserved(self, sample_model):
        """Test tensor order and shapes survive."""
        quantized = mantissa_quantize_model(sample_model, QuantSpec(n=23))
        exponent_range, packed = quantize_model(quantized, 23)
        decoded = decode_model(exponent_range, packed, 23)

        assert [t.shape for t in decoded] == [t.shape for t in sample_model]
        assert _bits_equal(decoded, quantized)

    def test_encode_tensor_preserves_shape(self):
        """Test packed tensors remember their shape."""
        values = np.float32([[1.0, 0.5], [0.0, -0.25]])
        packed = encode_tensor(values, ExponentRange.from_bounds(0, -2), 23)
        assert packed.shape == (2, 2)
        assert packed.exp_code.tolist() == [3, 2, 0, 1]


class TestHistogram:
    """Test the log2 magnitude histogram."""

    def test_counts_sum_to_parameter_count(self, sample_model):
        """Test bucket counts plus zeros equal the parameter count."""
        counts, zeros = log2_histogram(sample_model)
        assert sum(counts.values()) + zeros == sum(t.size for t in sample_model)

    def test_buckets(self, example_model):
        """Test the example model lands in exponent buckets 0, -1 and -29."""
        counts, zeros = log2_histogram(example_model)
        assert counts == {-29: 1, -1: 1, 0: 1}
        assert zeros == 1
