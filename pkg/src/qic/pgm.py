"""Minimal 8-bit PGM reader and writer (binary P5 and ASCII P2).

Comments (``#`` to end of line) are honored anywhere in the header. Only
maxval <= 255 is supported; 16-bit files are rejected rather than silently
truncated.
"""

from __future__ import annotations

import os
from typing import Iterator, Union

import numpy as np

from .errors import FormatError, UsageError

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def _tokens(data: bytes, start: int) -> Iterator[tuple[bytes, int]]:
    """Whitespace-separated header tokens with comment stripping.

    Yields (token, position_after_token) pairs.
    """
    pos = start
    size = len(data)
    while pos < size:
        byte = data[pos:pos + 1]
        if byte.isspace():
            pos += 1
        elif byte == b"#":
            eol = data.find(b"\n", pos)
            pos = size if eol < 0 else eol + 1
        else:
            end = pos
            while end < size and not data[end:end + 1].isspace() \
                    and data[end:end + 1] != b"#":
                end += 1
            yield data[pos:end], end
            pos = end


def read_pgm(path: Union[str, os.PathLike]) -> np.ndarray:
    """Load a P5 or P2 grayscale file as a (height, width) uint8 array."""
    with open(path, "rb") as handle:
        data = handle.read()

    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise FormatError(f"not a supported PGM file (magic {magic!r})", offset=0)

    fields = []
    after = 2
    token_iter = _tokens(data, 2)
    for _ in range(3):
        try:
            token, after = next(token_iter)
        except StopIteration:
            raise FormatError("incomplete PGM header", offset=len(data)) from None
        try:
            fields.append(int(token))
        except ValueError:
            raise FormatError(f"bad header token {token!r}", offset=after) from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"bad dimensions {width}x{height}", offset=after)
    if not 1 <= maxval <= 255:
        raise FormatError(f"only 8-bit files supported, maxval={maxval}", offset=after)

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from raster data
        if not data[after:after + 1].isspace():
            raise FormatError("missing whitespace before raster data", offset=after)
        start = after + 1
        raster = data[start:start + count]
        if len(raster) < count:
            raise FormatError(f"expected {count} pixel bytes, found {len(raster)}",
                              offset=len(data))
        pixels = np.frombuffer(raster, dtype=np.uint8, count=count)
    else:
        values = []
        for token, after in _tokens(data, after):
            values.append(token)
            if len(values) == count:
                break
        if len(values) < count:
            raise FormatError(f"expected {count} pixel values, found {len(values)}",
                              offset=len(data))
        try:
            pixels = np.array([int(v) for v in values], dtype=np.int64)
        except ValueError:
            raise FormatError("non-numeric pixel data", offset=after) from None
        if pixels.min() < 0 or pixels.max() > maxval:
            raise FormatError("pixel value out of range", offset=after)
        pixels = pixels.astype(np.uint8)
    return pixels.reshape(height, width)


def write_pgm(path: Union[str, os.PathLike], image: np.ndarray,
              ascii_format: bool = False) -> None:
    """Write a (height, width) array of 0..255 values as P5 (or P2) PGM."""
    image = np.asarray(image)
    if image.ndim != 2:
        raise UsageError(f"expected a 2-D grayscale image, got shape {image.shape}")
    if image.dtype != np.uint8:
        if image.min() < 0 or image.max() > 255:
            raise UsageError("pixel values outside 0..255")
        image = np.rint(image).astype(np.uint8)
    height, width = image.shape
    with open(path, "wb") as handle:
        if ascii_format:
            handle.write(f"P2\n{width} {height}\n255\n".encode())
            for row in image:
                handle.write(" ".join(str(int(v)) for v in row).encode() + b"\n")
        else:
            handle.write(f"P5\n{width} {height}\n255\n".encode())
            handle.write(image.tobytes())


def rgb_to_gray(image: np.ndarray) -> np.ndarray:
    """Luma conversion (0.299, 0.587, 0.114) for (H, W, 3) arrays."""
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 3 or image.shape[2] != 3:
        raise UsageError(f"expected an (H, W, 3) array, got shape {image.shape}")
    return image @ np.array(LUMA_WEIGHTS)
