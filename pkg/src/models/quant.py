#!/usr/bin/env python3

"""
Value models for mantissa and exponent quantization

QuantSpec and ExponentRange are validated pydantic models; the per-value
records (FloatFields, PackedCode, PackedTensor) are plain dataclasses
because they are created in bulk.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, Field, model_validator

MANTISSA_BITS = 23
EXPONENT_BITS = 8
EXPONENT_BIAS = 127
FLOAT_BITS = 32


class QuantMode(str, Enum):
    """Mantissa quantization rule."""

    CONDITIONAL = "conditional"
    CHOP = "chop"


class QuantSpec(BaseModel):
    """
    Mantissa quantization configuration.

    ``n`` is the number of trailing bits removed; n == 0 is the identity.
    """

    n: int = Field(..., ge=0, le=MANTISSA_BITS, description="Number of low bits to drop")
    mode: QuantMode = Field(QuantMode.CONDITIONAL, description="Rounding rule")

    model_config = {"frozen": True}

    @property
    def bit_width(self) -> int:
        """Bits remaining per parameter after quantization."""
        return FLOAT_BITS - self.n

    @property
    def is_identity(self) -> bool:
        return self.n == 0

    @classmethod
    def from_bit_width(cls, bits: int, mode: QuantMode | str = QuantMode.CONDITIONAL) -> "QuantSpec":
        """Build a spec from the remaining bit-width (9..32)."""
        return cls(n=FLOAT_BITS - bits, mode=QuantMode(mode))


def exponent_code_length(max_exp: int, min_exp: int) -> int:
    """
    Smallest code length holding every offset plus the zero escape.

    Equals ceil(log2((max - min + 1) + 1)) computed in integers.
    """
    return (max_exp - min_exp + 1).bit_length()


class ExponentRange(BaseModel):
    """
    Model-wide exponent statistics {max, min, len}.

    ``max_exp``/``min_exp`` are unbiased exponents over nonzero parameters;
    ``length`` is the exponent code width in bits (sign excluded).
    """

    max_exp: int = Field(..., ge=-126, le=127)
    min_exp: int = Field(..., ge=-126, le=127)
    length: int = Field(..., ge=1, le=EXPONENT_BITS)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_consistency(self) -> "ExponentRange":
        if self.min_exp > self.max_exp:
            raise ValueError(f"min exponent {self.min_exp} exceeds max exponent {self.max_exp}")
        expected = exponent_code_length(self.max_exp, self.min_exp)
        if self.length != expected:
            raise ValueError(f"code length {self.length} does not match range (expected {expected})")
        return self

    @classmethod
    def from_bounds(cls, max_exp: int, min_exp: int) -> "ExponentRange":
        return cls(max_exp=max_exp, min_exp=min_exp, length=exponent_code_length(max_exp, min_exp))

    @property
    def max_code(self) -> int:
        """Largest code produced for this range."""
        return self.max_exp - self.min_exp + 1

    def param_width(self, n: int) -> int:
        """Stored bits per parameter: sign + exponent code + kept mantissa."""
        return 1 + self.length + (MANTISSA_BITS - n)

    def __str__(self) -> str:
        return f"{{{self.max_exp}, {self.min_exp}, {self.length}}}"


@dataclass(frozen=True)
class FloatFields:
    """Sign, biased exponent and mantissa of one single-precision value."""

    sign: int
    exponent: int
    mantissa: int

    @property
    def is_normal(self) -> bool:
        return 1 <= self.exponent <= 254

    @property
    def is_special(self) -> bool:
        return self.exponent == 255

    @property
    def is_denormal(self) -> bool:
        return self.exponent == 0 and self.mantissa != 0


@dataclass(frozen=True)
class PackedCode:
    """One exponent-quantized parameter: exp_code 0 marks an exact zero."""

    sign: int
    exp_code: int
    residual: int


@dataclass
class PackedTensor:
    """Vectorized PackedCode fields for one tensor, in row-major order."""

    shape: tuple[int, ...]
    sign: np.ndarray
    exp_code: np.ndarray
    residual: np.ndarray

    @property
    def size(self) -> int:
        return int(self.sign.size)

    def code(self, index: int) -> PackedCode:
        """Return the code of the element at flat ``index``."""
        return PackedCode(
            sign=int(self.sign[index]),
            exp_code=int(self.exp_code[index]),
            residual=int(self.residual[index]),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PackedTensor):
            return NotImplemented
        return (
            tuple(self.shape) == tuple(other.shape)
            and np.array_equal(self.sign, other.sign)
            and np.array_equal(self.exp_code, other.exp_code)
            and np.array_equal(self.residual, other.residual)
        )
