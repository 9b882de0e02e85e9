#!/usr/bin/env python3

"""
Bit-level codec for IEEE 754 single-precision values

Bits are indexed MSB first: bits[0] is the sign, bits[1:8] the biased
exponent and bits[9:31] the mantissa.
"""

import numpy as np

from ..exceptions import ValidationError
from ..models.quant import EXPONENT_BIAS, MANTISSA_BITS, FloatFields

SIGN_MASK = np.uint32(0x80000000)
EXPONENT_MASK = np.uint32(0x7F800000)
MANTISSA_MASK = np.uint32(0x007FFFFF)


def to_bits(values) -> np.ndarray:
    """Reinterpret float32 values as uint32 bit patterns (no conversion of bits)."""
    return np.ascontiguousarray(values, dtype=np.float32).view(np.uint32)


def from_bits(bits) -> np.ndarray:
    """Reinterpret uint32 bit patterns as float32 values."""
    return np.ascontiguousarray(bits, dtype=np.uint32).view(np.float32)


def decompose_array(values) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split float32 values into (sign, biased exponent, mantissa) arrays."""
    bits = to_bits(values)
    sign = (bits >> np.uint32(31)).astype(np.uint32)
    exponent = ((bits & EXPONENT_MASK) >> np.uint32(MANTISSA_BITS)).astype(np.uint32)
    mantissa = bits & MANTISSA_MASK
    return sign, exponent, mantissa


def compose_array(sign, exponent, mantissa) -> np.ndarray:
    """Inverse of decompose_array; inputs are assumed in range."""
    sign = np.asarray(sign, dtype=np.uint32)
    exponent = np.asarray(exponent, dtype=np.uint32)
    mantissa = np.asarray(mantissa, dtype=np.uint32)
    bits = (sign << np.uint32(31)) | (exponent << np.uint32(MANTISSA_BITS)) | mantissa
    return from_bits(bits)


def decompose(x) -> FloatFields:
    """Decompose one 32-bit value. Any bit pattern is accepted."""
    bits = int(to_bits(np.float32(x)).reshape(-1)[0])
    return FloatFields(
        sign=bits >> 31,
        exponent=(bits >> MANTISSA_BITS) & 0xFF,
        mantissa=bits & 0x7FFFFF,
    )


def compose(fields: FloatFields) -> np.float32:
    """Rebuild the 32-bit value of ``fields``; bit-exact inverse of decompose."""
    if fields.sign not in (0, 1):
        raise ValidationError(f"sign must be 0 or 1, got {fields.sign}")
    if not 0 <= fields.exponent <= 255:
        raise ValidationError(f"exponent must be in [0, 255], got {fields.exponent}")
    if not 0 <= fields.mantissa < (1 << MANTISSA_BITS):
        raise ValidationError(f"mantissa must be in [0, 2^23 - 1], got {fields.mantissa}")
    bits = (fields.sign << 31) | (fields.exponent << MANTISSA_BITS) | fields.mantissa
    return from_bits(np.array([bits], dtype=np.uint32))[0]


def _require_normal(fields: FloatFields) -> None:
    if fields.is_special:
        raise ValidationError("exponent 255 encodes NaN/Inf")
    if fields.exponent == 0:
        raise ValidationError("exponent 0 encodes zero or a denormal")


def decimal_value(fields: FloatFields) -> float:
    """
    Evaluate a normal value from its fields by summing the mantissa bits.

    (-1)^sign * (1 + sum(b_{8+i} * 2^-i)) * 2^(exponent - 127). Documentation
    and test utility; the runtime path reinterprets bits natively.
    """
    _require_normal(fields)
    fraction = 0.0
    for i in range(1, MANTISSA_BITS + 1):
        if (fields.mantissa >> (MANTISSA_BITS - i)) & 1:
            fraction += 2.0 ** -i
    return (-1.0) ** fields.sign * (1.0 + fraction) * 2.0 ** (fields.exponent - EXPONENT_BIAS)


def unbiased_exponent(fields: FloatFields) -> int:
    """Return exponent - 127 for a normal value."""
    _require_normal(fields)
    return fields.exponent - EXPONENT_BIAS


def bit_string(x) -> str:
    """Render the 32-bit pattern of ``x`` as bits[0:31], MSB first."""
    bits = int(to_bits(np.float32(x)).reshape(-1)[0])
    return format(bits, "032b")
