#!/usr/bin/env python3

"""
MSB-first bit packing of fixed-width fields

Each record is the concatenation of its fields, most significant bit
first; records follow each other without gaps and the final byte is
zero-padded. Works on whole arrays with numpy's packbits/unpackbits.
"""

from collections.abc import Sequence

import numpy as np

from ..exceptions import TruncatedPayloadError, ValidationError


def packed_size(count: int, record_bits: int) -> int:
    """Bytes needed for ``count`` records of ``record_bits`` bits."""
    return (count * record_bits + 7) // 8


def _field_bits(values: np.ndarray, width: int) -> np.ndarray:
    """Expand values into a (count, width) matrix of bits, MSB first."""
    matrix = np.empty((values.size, width), dtype=np.uint8)
    for column in range(width):
        shift = np.uint64(width - 1 - column)
        matrix[:, column] = (values >> shift) & np.uint64(1)
    return matrix


def pack_fields(fields: Sequence[tuple[np.ndarray, int]]) -> bytes:
    """
    Pack parallel arrays of unsigned fields into a bitstream.

    Args:
        fields: (values, width) pairs, emitted left to right per record

    Raises:
        ValidationError: a value does not fit its declared width
    """
    widths = [width for _, width in fields if width > 0]
    if not widths:
        return b""
    count = int(fields[0][0].size)
    columns = []
    for values, width in fields:
        if width == 0:
            continue
        flat = np.asarray(values).reshape(-1).astype(np.uint64)
        if flat.size != count:
            raise ValidationError("field arrays differ in length")
        if flat.size and int(flat.max()) >> width:
            raise ValidationError(f"field value {int(flat.max())} does not fit in {width} bits")
        columns.append(_field_bits(flat, width))
    matrix = np.concatenate(columns, axis=1) if columns else np.zeros((count, 0), dtype=np.uint8)
    return np.packbits(matrix.reshape(-1)).tobytes()


def unpack_fields(payload: bytes, count: int, widths: Sequence[int]) -> list[np.ndarray]:
    """
    Inverse of pack_fields.

    Raises:
        TruncatedPayloadError: payload shorter than ``count`` records
    """
    record_bits = sum(widths)
    needed = packed_size(count, record_bits)
    if len(payload) < needed:
        raise TruncatedPayloadError(f"payload has {len(payload)} bytes, expected {needed}")
    if record_bits == 0 or count == 0:
        return [np.zeros(count, dtype=np.uint64) for _ in widths]

    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8, count=needed))
    matrix = bits[: count * record_bits].reshape(count, record_bits)

    fields = []
    start = 0
    for width in widths:
        if width == 0:
            fields.append(np.zeros(count, dtype=np.uint64))
            continue
        value = np.zeros(count, dtype=np.uint64)
        for column in range(start, start + width):
            value = (value << np.uint64(1)) | matrix[:, column].astype(np.uint64)
        fields.append(value)
        start += width
    return fields
