#!/usr/bin/env python3

"""
On-disk model container and size accounting

Layout (all integers little-endian):

    magic    4 bytes  b"EOFP"
    version  1 byte   1
    n        1 byte   chop count
    len      1 byte   exponent code length
    min      2 bytes  signed, smallest unbiased exponent
    tensors  2 bytes  unsigned tensor count
    per tensor: rank (1 byte), then each dimension (4 bytes unsigned)
    payloads, in tensor order, each padded to a byte boundary

The header sentinels select the payload encoding:

    n == 0, len == 0   raw float32 little-endian values (ingestion format)
    n > 0,  len == 0   mantissa-only: [sign][8-bit exponent][23-n bits]
    len > 0            packed codes:  [sign][len-bit code][23-n bits]

Codes are written MSB first, in row-major element order.
"""

import math
import struct
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from ..exceptions import (
    BadMagicError,
    InvalidHeaderError,
    LengthMismatchError,
    ModelFormatError,
    TruncatedPayloadError,
    ValidationError,
    VersionMismatchError,
)
from ..models.quant import MANTISSA_BITS, ExponentRange, PackedTensor
from ..models.reports import SizeReport
from ..utils.error_handlers import handle_file_operation, handle_model_read
from ..utils.logging_config import get_logger
from .bitstream import pack_fields, packed_size, unpack_fields
from .exponent_quant import decode_model
from .float_codec import compose_array, decompose_array

logger = get_logger("store")

MAGIC = b"EOFP"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sBBBhH")
HEADER_SIZE = HEADER.size  # 11 bytes
DIMENSION = struct.Struct("<I")
MAX_TENSORS = 0xFFFF
MAX_RANK = 0xFF


class ContainerKind(str, Enum):
    """Payload encoding selected by the header sentinels."""

    RAW = "raw"
    MANTISSA = "mantissa"
    EOFP = "eofp"


@dataclass
class ModelHeader:
    """Decoded header and tensor descriptors."""

    version: int
    n: int
    length: int
    min_exp: int
    shapes: list[tuple[int, ...]]
    payload_offset: int

    @property
    def kind(self) -> ContainerKind:
        if self.length > 0:
            return ContainerKind.EOFP
        return ContainerKind.RAW if self.n == 0 else ContainerKind.MANTISSA

    @property
    def record_widths(self) -> list[int]:
        """Bit widths of the fields of one stored parameter."""
        if self.kind is ContainerKind.RAW:
            return [32]
        exponent_bits = self.length if self.kind is ContainerKind.EOFP else 8
        return [1, exponent_bits, MANTISSA_BITS - self.n]

    @property
    def parameter_count(self) -> int:
        return sum(math.prod(shape) for shape in self.shapes)


@dataclass
class LoadedModel:
    """A model file of any kind, with its values decoded to float32."""

    header: ModelHeader
    tensors: list[np.ndarray]
    exponent_range: ExponentRange | None = None
    packed: list[PackedTensor] = field(default_factory=list)

    @property
    def kind(self) -> ContainerKind:
        return self.header.kind

    @property
    def n(self) -> int:
        return self.header.n

    @property
    def parameter_count(self) -> int:
        return self.header.parameter_count


def _encode_header(n: int, length: int, min_exp: int, shapes: Sequence[tuple[int, ...]]) -> bytes:
    if len(shapes) > MAX_TENSORS:
        raise ValidationError(f"too many tensors: {len(shapes)} (max {MAX_TENSORS})")
    parts = [HEADER.pack(MAGIC, FORMAT_VERSION, n, length, min_exp, len(shapes))]
    for shape in shapes:
        if len(shape) > MAX_RANK:
            raise ValidationError(f"tensor rank {len(shape)} exceeds {MAX_RANK}")
        parts.append(bytes([len(shape)]))
        for dim in shape:
            if not 0 <= dim <= 0xFFFFFFFF:
                raise ValidationError(f"dimension {dim} does not fit in 4 bytes")
            parts.append(DIMENSION.pack(dim))
    return b"".join(parts)


def _check_n(n: int) -> None:
    if not 0 <= n <= MANTISSA_BITS:
        raise ValidationError(f"chop count n must be in [0, {MANTISSA_BITS}], got {n}")


def _canonical_max_code(length: int) -> int:
    """Max code assumed for a code-free model: the smallest code of that length."""
    return 1 << (length - 1)


def write_model(exponent_range: ExponentRange, packed: Sequence[PackedTensor], n: int) -> bytes:
    """
    Serialize an exponent-quantized model.

    The header stores only min and len; max is recovered from the largest
    code on read. A model with no nonzero code (no tensors, or only zeros)
    accepts any range and reads back with the smallest max of that length.

    Raises:
        ValidationError: codes do not fit the declared widths or do not match the range
    """
    _check_n(n)
    observed = max((int(t.exp_code.max()) for t in packed if t.size), default=0)
    if observed and exponent_range.max_code != observed:
        raise ValidationError(
            f"range {exponent_range} is inconsistent with codes (largest code {observed})"
        )
    widths = [1, exponent_range.length, MANTISSA_BITS - n]
    chunks = [_encode_header(n, exponent_range.length, exponent_range.min_exp, [t.shape for t in packed])]
    for tensor in packed:
        if tensor.size != math.prod(tensor.shape):
            raise ValidationError(f"tensor shape {tensor.shape} does not match {tensor.size} codes")
        chunks.append(
            pack_fields(list(zip((tensor.sign, tensor.exp_code, tensor.residual), widths, strict=True)))
        )
    data = b"".join(chunks)
    logger.debug(f"Wrote EOFP container: {len(packed)} tensors, {len(data)} bytes")
    return data


def write_mantissa_model(tensors: Sequence[np.ndarray], n: int) -> bytes:
    """
    Serialize a mantissa-quantized model without the exponent stage.

    With n == 0 this is the raw full-precision format.

    Raises:
        ValidationError: a value has nonzero bits below ``n``
    """
    _check_n(n)
    if n == 0:
        return write_raw_model(tensors)
    arrays = [np.asarray(t, dtype=np.float32) for t in tensors]
    chunks = [_encode_header(n, 0, 0, [a.shape for a in arrays])]
    low = (1 << n) - 1
    for position, array in enumerate(arrays):
        sign, exponent, mantissa = decompose_array(array)
        if np.any(mantissa & np.uint32(low)):
            raise ValidationError(f"tensor {position} has un-quantized mantissa bits below n={n}")
        chunks.append(
            pack_fields([(sign, 1), (exponent, 8), (mantissa >> np.uint32(n), MANTISSA_BITS - n)])
        )
    return b"".join(chunks)


def write_raw_model(tensors: Sequence[np.ndarray]) -> bytes:
    """Serialize full-precision tensors in the raw ingestion format."""
    arrays = [np.asarray(t, dtype=np.float32) for t in tensors]
    chunks = [_encode_header(0, 0, 0, [a.shape for a in arrays])]
    chunks.extend(a.astype("<f4").tobytes(order="C") for a in arrays)
    return b"".join(chunks)


def read_header(data: bytes) -> ModelHeader:
    """
    Parse and validate the fixed header and tensor descriptors.

    Raises:
        BadMagicError, VersionMismatchError, TruncatedPayloadError,
        InvalidHeaderError
    """
    prefix = bytes(data[: len(MAGIC)])
    if not MAGIC.startswith(prefix):
        raise BadMagicError(f"bad magic {prefix!r}, expected {MAGIC!r}")
    if len(data) < HEADER_SIZE:
        raise TruncatedPayloadError(f"header needs {HEADER_SIZE} bytes, got {len(data)}")

    _, version, n, length, min_exp, tensor_count = HEADER.unpack_from(data, 0)
    if version != FORMAT_VERSION:
        raise VersionMismatchError(f"unsupported version {version}, expected {FORMAT_VERSION}")
    if n > MANTISSA_BITS:
        raise InvalidHeaderError(f"chop count {n} exceeds {MANTISSA_BITS}")
    if length > 8:
        raise InvalidHeaderError(f"exponent code length {length} exceeds 8")
    if length == 0 and min_exp != 0:
        raise InvalidHeaderError(f"min exponent {min_exp} set without an exponent stage")
    if length > 0 and not -126 <= min_exp <= 127:
        raise InvalidHeaderError(f"min exponent {min_exp} outside [-126, 127]")

    offset = HEADER_SIZE
    shapes = []
    for index in range(tensor_count):
        if offset + 1 > len(data):
            raise TruncatedPayloadError(f"descriptor of tensor {index} is truncated")
        rank = data[offset]
        offset += 1
        end = offset + rank * DIMENSION.size
        if end > len(data):
            raise TruncatedPayloadError(f"dimensions of tensor {index} are truncated")
        shapes.append(tuple(DIMENSION.unpack_from(data, offset + i * DIMENSION.size)[0] for i in range(rank)))
        offset = end

    return ModelHeader(
        version=version,
        n=n,
        length=length,
        min_exp=min_exp,
        shapes=shapes,
        payload_offset=offset,
    )


def _split_payloads(data: bytes, header: ModelHeader) -> list[bytes]:
    record_bits = sum(header.record_widths)
    sizes = [packed_size(math.prod(shape), record_bits) for shape in header.shapes]
    expected = header.payload_offset + sum(sizes)
    if len(data) < expected:
        raise TruncatedPayloadError(f"payload needs {expected} bytes, file has {len(data)}")
    if len(data) > expected:
        raise LengthMismatchError(
            f"file has {len(data) - expected} trailing bytes beyond the declared payload"
        )
    payloads = []
    offset = header.payload_offset
    for size in sizes:
        payloads.append(bytes(data[offset : offset + size]))
        offset += size
    return payloads


def read_model(data: bytes) -> tuple[ExponentRange, list[PackedTensor], int]:
    """
    Parse an exponent-quantized container; exact inverse of write_model.

    Raises:
        ModelFormatError: any malformed input (subclass names the failure)
    """
    with handle_model_read("read_model"):
        header = read_header(data)
        if header.kind is not ContainerKind.EOFP:
            raise ModelFormatError(f"container holds a {header.kind.value} model, not packed codes")
        payloads = _split_payloads(data, header)
        packed = []
        for shape, payload in zip(header.shapes, payloads, strict=True):
            sign, codes, residual = unpack_fields(payload, math.prod(shape), header.record_widths)
            packed.append(
                PackedTensor(
                    shape=shape,
                    sign=sign.astype(np.uint8),
                    exp_code=codes.astype(np.uint16),
                    residual=residual.astype(np.uint32),
                )
            )
        observed = max((int(t.exp_code.max()) for t in packed if t.size), default=0)
        max_code = observed if observed else _canonical_max_code(header.length)
        try:
            exponent_range = ExponentRange(
                max_exp=header.min_exp + max_code - 1,
                min_exp=header.min_exp,
                length=header.length,
            )
        except PydanticValidationError as e:
            raise LengthMismatchError(f"codes are inconsistent with the header range: {e}") from e
        return exponent_range, packed, header.n


def read_mantissa_model(data: bytes) -> tuple[list[np.ndarray], int]:
    """Parse a raw or mantissa-only container into float32 tensors and n."""
    with handle_model_read("read_mantissa_model"):
        header = read_header(data)
        if header.kind is ContainerKind.EOFP:
            raise ModelFormatError("container holds packed codes; use read_model")
        payloads = _split_payloads(data, header)
        tensors = []
        for shape, payload in zip(header.shapes, payloads, strict=True):
            count = math.prod(shape)
            if header.kind is ContainerKind.RAW:
                values = np.frombuffer(payload, dtype="<f4", count=count).astype(np.float32)
            else:
                sign, exponent, residual = unpack_fields(payload, count, header.record_widths)
                values = compose_array(
                    sign.astype(np.uint32),
                    exponent.astype(np.uint32),
                    (residual << np.uint64(header.n)).astype(np.uint32),
                )
            tensors.append(values.reshape(shape))
        return tensors, header.n


def read_raw_model(data: bytes) -> list[np.ndarray]:
    """Parse the raw full-precision ingestion format."""
    tensors, n = read_mantissa_model(data)
    if n != 0:
        raise ModelFormatError(f"expected a raw model, found a mantissa-quantized one (n={n})")
    return tensors


def load_model(data: bytes) -> LoadedModel:
    """Parse a container of any kind and decode its values."""
    with handle_model_read("load_model"):
        header = read_header(data)
        if header.kind is ContainerKind.EOFP:
            exponent_range, packed, n = read_model(data)
            tensors = decode_model(exponent_range, packed, n)
            return LoadedModel(header=header, tensors=tensors, exponent_range=exponent_range, packed=packed)
        tensors, _ = read_mantissa_model(data)
        return LoadedModel(header=header, tensors=tensors)


def save_bytes(path: Path, data: bytes) -> None:
    """Write ``data`` to ``path``."""
    with handle_file_operation(f"write {path}"):
        Path(path).write_bytes(data)
    logger.info(f"Wrote {len(data)} bytes to {path}")


def load_bytes(path: Path) -> bytes:
    """Read the whole file at ``path``."""
    with handle_file_operation(f"read {path}"):
        return Path(path).read_bytes()


def size_report(parameter_count: int, n: int, length: int) -> SizeReport:
    """Size of a model of ``parameter_count`` parameters at each stage."""
    try:
        return SizeReport(parameter_count=parameter_count, n=n, length=length)
    except PydanticValidationError as e:
        raise ValidationError(f"invalid size report arguments: {e}") from e
