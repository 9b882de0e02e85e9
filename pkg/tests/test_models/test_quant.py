#!/usr/bin/env python3

"""
Tests for src.models.quant module.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.models.quant import (
    ExponentRange,
    PackedTensor,
    QuantMode,
    QuantSpec,
    exponent_code_length,
)


class TestQuantSpec:
    """Test the mantissa quantization spec."""

    def test_defaults(self):
        """Test conditional rounding is the default mode."""
        spec = QuantSpec(n=23)
        assert spec.mode is QuantMode.CONDITIONAL
        assert spec.bit_width == 9
        assert not spec.is_identity

    def test_from_bit_width(self):
        """Test bit widths map to n = 32 - bits."""
        assert QuantSpec.from_bit_width(32).n == 0
        assert QuantSpec.from_bit_width(32).is_identity
        assert QuantSpec.from_bit_width(20, "chop") == QuantSpec(n=12, mode=QuantMode.CHOP)

    @pytest.mark.parametrize("n", [-1, 24])
    def test_n_out_of_range(self, n):
        """Test n must lie in [0, 23]."""
        with pytest.raises(ValidationError):
            QuantSpec(n=n)

    def test_unknown_mode(self):
        """Test unknown rounding modes are rejected."""
        with pytest.raises(ValueError):
            QuantSpec.from_bit_width(16, "nearest")


class TestExponentRange:
    """Test {max, min, len} validation."""

    @pytest.mark.parametrize(
        "max_exp,min_exp,length",
        [(0, 0, 1), (0, -1, 2), (0, -2, 2), (0, -6, 3), (0, -7, 4), (0, -23, 5), (0, -29, 5), (0, -31, 6)],
    )
    def test_code_length(self, max_exp, min_exp, length):
        """Test len = ceil(log2(span + 1)) including the zero escape."""
        assert exponent_code_length(max_exp, min_exp) == length
        assert ExponentRange.from_bounds(max_exp, min_exp).length == length

    def test_full_float_range_needs_eight_bits(self):
        """Test the widest normal exponent span fits 8 bits."""
        exponent_range = ExponentRange.from_bounds(127, -126)
        assert exponent_range.length == 8
        assert exponent_range.max_code == 254

    def test_inconsistent_length_rejected(self):
        """Test a stated length must match the span."""
        with pytest.raises(ValidationError):
            ExponentRange(max_exp=0, min_exp=-29, length=6)

    def test_inverted_bounds_rejected(self):
        """Test min above max is rejected."""
        with pytest.raises(ValidationError):
            ExponentRange(max_exp=-3, min_exp=0, length=3)

    def test_param_width_and_str(self):
        """Test stored bits per parameter and the {max, min, len} rendering."""
        exponent_range = ExponentRange.from_bounds(0, -29)
        assert exponent_range.param_width(23) == 6
        assert exponent_range.param_width(0) == 29
        assert str(exponent_range) == "{0, -29, 5}"


class TestPackedTensor:
    """Test packed tensor containers."""

    def test_code_and_equality(self):
        """Test element access and array-aware equality."""
        packed = PackedTensor(
            shape=(2,),
            sign=np.array([0, 1], dtype=np.uint8),
            exp_code=np.array([3, 0], dtype=np.uint16),
            residual=np.array([5, 0], dtype=np.uint32),
        )
        twin = PackedTensor(
            shape=(2,),
            sign=packed.sign.copy(),
            exp_code=packed.exp_code.copy(),
            residual=packed.residual.copy(),
        )

        assert packed.size == 2
        assert packed.code(0).exp_code == 3
        assert packed.code(1).sign == 1
        assert packed == twin
        twin.residual[0] = 4
        assert packed != twin
