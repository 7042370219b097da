"""Binary container for compressed images, reconstruction, and size ratios.

Wire format (all little-endian), version 1:

    offset  size  field
    0       4     magic "QIC1"
    4       2     u16 format version (= 1)
    6       4     u32 original image height
    10      4     u32 original image width
    14      2     u16 block size k
    16      1     u8  qubit count n (= 2*log2(k), stored for integrity)
    17      2     u16 layer count L
    19      1     u8  ansatz id (rotation axes, see ansatz.ansatz_id)
    20      1     u8  flags (reserved, 0)

followed by ``N*M`` block payloads in raster order:

    u8  origin tag (Origin value)
    f64 scale factor
    m x f64 rotation angles, present only when scale > 0

Angles are wrapped into [0, 2*pi) at encode time; the prepared state's
overlap with any target is unchanged by full-turn shifts, so wrapping is
lossless for reconstruction. The per-block payload is ``1 + 8 + 8m`` bytes
(9 bytes for all-zero blocks). Encode/decode are exact inverses at the byte
level; fitting diagnostics (cost, iteration counts) are not stored.
"""

from __future__ import annotations

import math
import struct
from typing import NamedTuple, Sequence

import numpy as np

from .ansatz import AnsatzConfig, ansatz_id, build_ansatz, rotation_sequence_from_id
from .errors import EncodeError, FormatError, UsageError
from .pipeline import BlockRecord, GridShape, plan_grid
from .statevec import run_circuit
from .transfer import Origin

MAGIC = b"QIC1"
VERSION = 1
_HEADER = struct.Struct("<4sHIIHBHBB")
_BLOCK_HEAD = struct.Struct("<Bd")
TWO_PI = 2.0 * math.pi


class CompressedImage(NamedTuple):
    """Decoded artifact: per-block records plus the geometry to reassemble."""

    records: list[BlockRecord]
    grid: GridShape
    config: AnsatzConfig


def wrap_angles(theta: np.ndarray) -> np.ndarray:
    """Map angles into [0, 2*pi); full turns drop out of the squared overlap."""
    wrapped = np.mod(np.asarray(theta, dtype=np.float64), TWO_PI)
    wrapped[wrapped >= TWO_PI] = 0.0  # mod can round up to exactly 2*pi
    return wrapped


def encode(records: Sequence[BlockRecord], grid: GridShape,
           config: AnsatzConfig) -> bytes:
    """Serialize a compression run; see the module docstring for the layout."""
    if config.n != grid.n:
        raise EncodeError(f"config has {config.n} qubits but grid wants {grid.n}")
    if len(records) != grid.block_count:
        raise EncodeError(f"expected {grid.block_count} records, got {len(records)}")
    m = config.param_count
    out = bytearray()
    out += _HEADER.pack(MAGIC, VERSION, grid.height, grid.width, grid.k,
                        grid.n, config.layers, ansatz_id(config), 0)
    for index, record in enumerate(records):
        row, col = divmod(index, grid.cols)
        if (record.row, record.col) != (row + 1, col + 1):
            raise EncodeError(f"record {index} is at grid position "
                              f"({record.row}, {record.col}), expected raster order")
        if not math.isfinite(record.scale) or record.scale < 0:
            raise EncodeError(f"record {index} has invalid scale {record.scale}")
        if (record.scale == 0.0) != (record.origin is Origin.ZERO):
            raise EncodeError(f"record {index}: scale 0 and ZERO origin must coincide")
        out += _BLOCK_HEAD.pack(record.origin.value, record.scale)
        if record.scale > 0:
            theta = np.asarray(record.theta, dtype=np.float64)
            if theta.shape != (m,):
                raise EncodeError(f"record {index} carries {theta.shape[0]} angles, "
                                  f"expected {m}")
            out += wrap_angles(theta).astype("<f8").tobytes()
    return bytes(out)


def decode(data: bytes) -> CompressedImage:
    """Parse bytes produced by :func:`encode`; strict, with byte offsets."""
    if len(data) < _HEADER.size:
        raise FormatError("truncated header", offset=len(data))
    magic, version, height, width, k, n, layers, tag, flags = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}", offset=0)
    if version != VERSION:
        raise FormatError(f"unsupported format version {version}", offset=4)
    try:
        grid = plan_grid(height, width, k)
        config = AnsatzConfig(n, layers, rotation_sequence_from_id(tag))
    except Exception as exc:
        raise FormatError(f"inconsistent header: {exc}", offset=6) from None
    if grid.n != n:
        raise FormatError(f"header says {n} qubits but k={k} implies {grid.n}",
                          offset=16)
    if flags != 0:
        raise FormatError(f"unknown flags 0x{flags:02x}", offset=20)

    m = config.param_count
    pos = _HEADER.size
    records: list[BlockRecord] = []
    placeholder = np.ones(m)
    for index in range(grid.block_count):
        if len(data) - pos < _BLOCK_HEAD.size:
            raise FormatError(f"truncated block {index}", offset=pos)
        tag_byte, scale = _BLOCK_HEAD.unpack_from(data, pos)
        pos += _BLOCK_HEAD.size
        try:
            origin = Origin(tag_byte)
        except ValueError:
            raise FormatError(f"unknown origin tag {tag_byte}",
                              offset=pos - _BLOCK_HEAD.size) from None
        if not math.isfinite(scale) or scale < 0:
            raise FormatError(f"invalid scale {scale!r} in block {index}",
                              offset=pos - 8)
        if (scale == 0.0) != (origin is Origin.ZERO):
            raise FormatError(f"block {index}: scale/origin mismatch",
                              offset=pos - _BLOCK_HEAD.size)
        if scale > 0:
            nbytes = 8 * m
            if len(data) - pos < nbytes:
                raise FormatError(f"truncated angles in block {index}", offset=pos)
            theta = np.frombuffer(data, dtype="<f8", count=m, offset=pos).copy()
            pos += nbytes
        else:
            theta = placeholder.copy()
        row, col = divmod(index, grid.cols)
        records.append(BlockRecord(theta, scale, None, origin, 0, 0,
                                   row + 1, col + 1))
    if pos != len(data):
        raise FormatError(f"{len(data) - pos} trailing bytes", offset=pos)
    return CompressedImage(records, grid, config)


def reconstruct_block(record: BlockRecord, config: AnsatzConfig, k: int) -> np.ndarray:
    """Pixel tile from one record: prepare, phase-align, rescale, clamp.

    The fitted state can differ from the (real, non-negative) target by a
    global phase; aligning the largest-magnitude amplitude to the positive
    real axis removes it before taking real parts.
    """
    if 1 << config.n != k * k:
        raise UsageError(f"{config.n} qubits cannot hold a {k}x{k} block")
    if record.scale == 0.0:
        return np.zeros((k, k))
    state = run_circuit(build_ansatz(config), np.asarray(record.theta), config.n)
    dominant = state[np.argmax(np.abs(state))]
    state = state * (dominant.conjugate() / abs(dominant))
    pixels = np.clip(state.real * record.scale, 0.0, 255.0)
    return pixels.reshape(k, k)


def decompress_image(compressed: CompressedImage) -> np.ndarray:
    """Reassemble the full image: blocks in raster order, padding cropped."""
    records, grid, config = compressed
    k = grid.k
    canvas = np.zeros((grid.rows * k, grid.cols * k))
    for record in records:
        i, j = record.row - 1, record.col - 1
        canvas[i * k:(i + 1) * k, j * k:(j + 1) * k] = \
            reconstruct_block(record, config, k)
    cropped = canvas[:grid.height, :grid.width]
    return np.clip(np.rint(cropped), 0, 255).astype(np.uint8)


def compression_ratio(grid: GridShape, config: AnsatzConfig) -> float:
    """Stored parameters per original pixel: ``N*M*(3nL + 1) / (H*W)``.

    Counted in abstract parameter units (one real per angle or scale, one
    per pixel), not bytes; below 1.0 the parameter form is smaller.
    """
    per_block = config.param_count + 1  # +1 for the scale factor
    return grid.block_count * per_block / (grid.height * grid.width)


def byte_ratio(encoded_size: int, grid: GridShape) -> float:
    """Actual bytes stored per 8-bit source pixel."""
    return encoded_size / (grid.height * grid.width)


def psnr(reference: np.ndarray, reconstructed: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB against 8-bit full scale."""
    reference = np.asarray(reference, dtype=np.float64)
    reconstructed = np.asarray(reconstructed, dtype=np.float64)
    if reference.shape != reconstructed.shape:
        raise UsageError(f"shape mismatch: {reference.shape} vs {reconstructed.shape}")
    mse = float(np.mean((reference - reconstructed) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / mse)
