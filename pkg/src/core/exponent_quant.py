#!/usr/bin/env python3

"""
Statistical exponent quantization

Scans the unbiased exponent range of a whole model and re-encodes every
exponent as an offset from the minimum: code 0 is the zero escape, code
e - min + 1 marks exponent e. Sign and kept mantissa bits are copied
verbatim, so the transform is lossless.
"""

from collections.abc import Sequence

import numpy as np

from ..exceptions import (
    DenormalValueError,
    NonFiniteValueError,
    NumericError,
    ValidationError,
)
from ..models.quant import (
    EXPONENT_BIAS,
    MANTISSA_BITS,
    ExponentRange,
    PackedCode,
    PackedTensor,
)
from ..utils.logging_config import get_logger
from .float_codec import compose_array, decompose_array

logger = get_logger("exponent")


def _check_representable(exponent: np.ndarray, mantissa: np.ndarray) -> None:
    special = np.flatnonzero(exponent == 255)
    if special.size:
        index = int(special[0])
        raise NonFiniteValueError(f"non-finite value at element {index}", index=index)
    denormal = np.flatnonzero((exponent == 0) & (mantissa != 0))
    if denormal.size:
        index = int(denormal[0])
        raise DenormalValueError(f"denormal value at element {index}", index=index)


def scan_range(model: Sequence[np.ndarray]) -> ExponentRange:
    """
    Find {max, min, len} over the nonzero parameters of every tensor.

    Raises:
        ValidationError: every parameter is zero
        NonFiniteValueError / DenormalValueError: with tensor and element index
    """
    max_exp: int | None = None
    min_exp: int | None = None
    for position, tensor in enumerate(model):
        _, exponent, mantissa = decompose_array(tensor)
        exponent = exponent.reshape(-1)
        mantissa = mantissa.reshape(-1)
        try:
            _check_representable(exponent, mantissa)
        except NumericError as e:
            e.tensor = position
            raise
        nonzero = exponent[exponent != 0]
        if nonzero.size == 0:
            continue
        hi = int(nonzero.max()) - EXPONENT_BIAS
        lo = int(nonzero.min()) - EXPONENT_BIAS
        max_exp = hi if max_exp is None else max(max_exp, hi)
        min_exp = lo if min_exp is None else min(min_exp, lo)

    if max_exp is None or min_exp is None:
        raise ValidationError("model has no nonzero parameter; exponent range is undefined")

    exponent_range = ExponentRange.from_bounds(max_exp, min_exp)
    logger.debug(f"Scanned exponent range {exponent_range}")
    return exponent_range


def encode_tensor(values, exponent_range: ExponentRange, n: int) -> PackedTensor:
    """
    Vectorized encode_param over a tensor.

    Raises:
        ValidationError: exponent outside the range, or nonzero low ``n`` bits
    """
    array = np.asarray(values, dtype=np.float32)
    sign, exponent, mantissa = (part.reshape(-1) for part in decompose_array(array))
    _check_representable(exponent, mantissa)

    if n:
        residue = np.flatnonzero(mantissa & np.uint32((1 << n) - 1))
        if residue.size:
            index = int(residue[0])
            raise ValidationError(
                f"element {index} has un-quantized mantissa bits below n={n}"
            )

    zero = exponent == 0
    unbiased = exponent.astype(np.int64) - EXPONENT_BIAS
    outside = np.flatnonzero(
        ~zero & ((unbiased < exponent_range.min_exp) | (unbiased > exponent_range.max_exp))
    )
    if outside.size:
        index = int(outside[0])
        raise ValidationError(
            f"element {index} has exponent {int(unbiased[index])} outside range {exponent_range}"
        )

    codes = np.where(zero, 0, unbiased - exponent_range.min_exp + 1)
    residual = np.where(zero, 0, mantissa >> np.uint32(n))
    return PackedTensor(
        shape=tuple(array.shape),
        sign=sign.astype(np.uint8),
        exp_code=codes.astype(np.uint16),
        residual=residual.astype(np.uint32),
    )


def decode_tensor(packed: PackedTensor, exponent_range: ExponentRange, n: int) -> np.ndarray:
    """
    Inverse of encode_tensor.

    Raises:
        NumericError: a code reconstructs a biased exponent outside [1, 254]
    """
    codes = packed.exp_code.astype(np.int64)
    zero = codes == 0
    biased = codes - 1 + exponent_range.min_exp + EXPONENT_BIAS
    invalid = np.flatnonzero(~zero & ((biased < 1) | (biased > 254)))
    if invalid.size:
        index = int(invalid[0])
        raise NumericError(
            f"code {int(codes[index])} at element {index} decodes to biased exponent "
            f"{int(biased[index])}",
            index=index,
        )
    exponent = np.where(zero, 0, biased).astype(np.uint32)
    mantissa = np.where(zero, 0, packed.residual.astype(np.uint32) << np.uint32(n))
    values = compose_array(packed.sign.astype(np.uint32), exponent, mantissa.astype(np.uint32))
    return values.reshape(packed.shape)


def encode_param(x: float, exponent_range: ExponentRange, n: int) -> PackedCode:
    """Encode a single mantissa-quantized value."""
    return encode_tensor(np.array([x], dtype=np.float32), exponent_range, n).code(0)


def decode_param(code: PackedCode, exponent_range: ExponentRange, n: int) -> np.float32:
    """Decode a single PackedCode."""
    if code.sign not in (0, 1):
        raise ValidationError(f"sign must be 0 or 1, got {code.sign}")
    if not 0 <= code.exp_code < (1 << exponent_range.length):
        raise ValidationError(f"exp_code {code.exp_code} exceeds {exponent_range.length} bits")
    if not 0 <= code.residual < (1 << (MANTISSA_BITS - n)):
        raise ValidationError(f"residual {code.residual} exceeds {MANTISSA_BITS - n} bits")
    packed = PackedTensor(
        shape=(1,),
        sign=np.array([code.sign], dtype=np.uint8),
        exp_code=np.array([code.exp_code], dtype=np.uint16),
        residual=np.array([code.residual], dtype=np.uint32),
    )
    return decode_tensor(packed, exponent_range, n)[0]


def quantize_model(model: Sequence[np.ndarray], n: int) -> tuple[ExponentRange, list[PackedTensor]]:
    """
    Scan the range and encode every tensor, preserving order.

    Raises:
        ValidationError / NumericError: ``tensor`` attribute names the tensor
    """
    exponent_range = scan_range(model)
    packed = []
    for position, tensor in enumerate(model):
        try:
            packed.append(encode_tensor(tensor, exponent_range, n))
        except (ValidationError, NumericError) as e:
            if isinstance(e, NumericError):
                e.tensor = position
            logger.error(f"Exponent encoding failed in tensor {position}: {e}")
            raise
    logger.info(
        f"Exponent-quantized {len(packed)} tensors, range {exponent_range}, "
        f"{exponent_range.param_width(n)} bits/param"
    )
    return exponent_range, packed


def decode_model(
    exponent_range: ExponentRange, packed: Sequence[PackedTensor], n: int
) -> list[np.ndarray]:
    """Decode every tensor of a packed model."""
    decoded = []
    for position, tensor in enumerate(packed):
        try:
            decoded.append(decode_tensor(tensor, exponent_range, n))
        except NumericError as e:
            e.tensor = position
            raise
    return decoded


def log2_histogram(model: Sequence[np.ndarray]) -> tuple[dict[int, int], int]:
    """
    Count parameters per unbiased exponent (floor of log2 |p|).

    Returns:
        Tuple of ({exponent: count} for nonzero finite normal values, zero count).
        Denormals are counted under -127 and non-finite values under 128.
    """
    counts: dict[int, int] = {}
    zeros = 0
    for tensor in model:
        _, exponent, mantissa = decompose_array(tensor)
        exponent = exponent.reshape(-1)
        mantissa = mantissa.reshape(-1)
        is_zero = (exponent == 0) & (mantissa == 0)
        zeros += int(np.count_nonzero(is_zero))
        values, tallies = np.unique(exponent[~is_zero], return_counts=True)
        for biased, tally in zip(values.tolist(), tallies.tolist(), strict=True):
            key = biased - EXPONENT_BIAS
            counts[key] = counts.get(key, 0) + tally
    return dict(sorted(counts.items())), zeros
