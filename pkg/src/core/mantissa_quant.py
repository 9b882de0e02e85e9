#!/usr/bin/env python3

"""
Mantissa quantization

Drops the last ``n`` bits of every single-precision parameter, either by
plain masking (chop) or with the conditional rounding rule:

- 0 < n < 23: the last kept bit becomes the OR of itself and the first
  dropped bit, then the tail is masked;
- n == 23: the first mantissa bit is added to the exponent field, then the
  whole mantissa is masked, leaving a signed power of two or zero.

Operates on uint32 views with numpy; scalar calls go through the same path.
"""

from collections.abc import Sequence

import numpy as np

from ..exceptions import ExponentOverflowError, NonFiniteValueError, NumericError
from ..models.quant import MANTISSA_BITS, QuantMode, QuantSpec
from ..utils.logging_config import get_logger
from .float_codec import EXPONENT_MASK, MANTISSA_MASK, SIGN_MASK, from_bits, to_bits

logger = get_logger("mantissa")

_EXPONENT_254 = np.uint32(254 << MANTISSA_BITS)
_FIRST_MANTISSA_BIT = np.uint32(1 << (MANTISSA_BITS - 1))


def keep_mask(n: int) -> np.uint32:
    """Mask with 1s at bits[0 .. 31-n] and 0s at the last n positions."""
    return np.uint32((0xFFFFFFFF << n) & 0xFFFFFFFF)


def _quantize_bits(bits: np.ndarray, spec: QuantSpec) -> np.ndarray:
    """Apply the quantizer to a flat uint32 array; errors carry the flat index."""
    n = spec.n
    exponent = bits & EXPONENT_MASK

    special = np.flatnonzero(exponent == EXPONENT_MASK)
    if special.size:
        index = int(special[0])
        raise NonFiniteValueError(f"non-finite value at element {index}", index=index)

    if n == 0:
        return bits.copy()

    # Denormals flush to signed zero.
    out = np.where((exponent == 0), bits & SIGN_MASK, bits).astype(np.uint32)

    if spec.mode is QuantMode.CONDITIONAL:
        if n < MANTISSA_BITS:
            carry = (out >> np.uint32(n - 1)) & np.uint32(1)
            out = out | (carry << np.uint32(n))
        else:
            first = (out & _FIRST_MANTISSA_BIT) != 0
            overflow = np.flatnonzero(first & ((out & EXPONENT_MASK) == _EXPONENT_254))
            if overflow.size:
                index = int(overflow[0])
                raise ExponentOverflowError(
                    f"exponent overflow at element {index}: rounding would produce Inf",
                    index=index,
                )
            out = out + (first.astype(np.uint32) << np.uint32(MANTISSA_BITS))

    return out & keep_mask(n)


def quantize_tensor(values: Sequence[float] | np.ndarray, spec: QuantSpec) -> np.ndarray:
    """
    Quantize every element of ``values``; shape is preserved.

    Args:
        values: float32 data (any shape)
        spec: quantization spec

    Returns:
        New float32 array

    Raises:
        NonFiniteValueError: NaN/Inf element (index is the flat position)
        ExponentOverflowError: n == 23 rounding would reach exponent 255
    """
    array = np.asarray(values, dtype=np.float32)
    bits = to_bits(array).reshape(-1)
    quantized = _quantize_bits(bits, spec)
    return from_bits(quantized).reshape(array.shape)


def quantize_value(x: float, spec: QuantSpec) -> np.float32:
    """Quantize a single value."""
    return quantize_tensor(np.array([x], dtype=np.float32), spec)[0]


def quantize_model(tensors: Sequence[np.ndarray], spec: QuantSpec) -> list[np.ndarray]:
    """
    Quantize every tensor of a model.

    Raises:
        NumericError: with ``tensor`` set to the offending tensor's position
    """
    quantized = []
    for position, tensor in enumerate(tensors):
        try:
            quantized.append(quantize_tensor(tensor, spec))
        except NumericError as e:
            e.tensor = position
            logger.error(f"Quantization failed in tensor {position}: {e}")
            raise
    logger.debug(f"Quantized {len(quantized)} tensors with n={spec.n} mode={spec.mode.value}")
    return quantized


def dropped_bits_ok(values, n: int) -> bool:
    """True when the last ``n`` bits of every element are zero."""
    if n == 0:
        return True
    bits = to_bits(np.asarray(values, dtype=np.float32))
    low = np.uint32((1 << n) - 1)
    return bool(np.all((bits & low) == 0))


def is_power_of_two_or_zero(values) -> bool:
    """True when every element has an all-zero mantissa (and no denormals)."""
    bits = to_bits(np.asarray(values, dtype=np.float32))
    exponent = bits & EXPONENT_MASK
    mantissa = bits & MANTISSA_MASK
    return bool(np.all(mantissa == 0) and np.all(exponent != EXPONENT_MASK))
