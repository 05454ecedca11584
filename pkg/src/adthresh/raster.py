"""Image containers and bit-exact PGM/PBM codecs.

Only 8-bit graymaps (P2/P5) are read; P5 graymaps and P4 packed bitmaps are
written. Binary convention throughout the package: 0 = foreground (black,
text), 1 = background (white, paper).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class PnmParseError(ValueError):
    """Malformed PGM stream; `offset` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale image, pixels shape (height, width), dtype uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.uint8)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("GrayImage needs a 2-D array with positive dimensions")
        object.__setattr__(self, "pixels", p)
        p.setflags(write=False)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True)
class NormImage:
    """Grayscale image with intensities in [0, 1], dtype float64."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.float64)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("NormImage needs a 2-D array with positive dimensions")
        if p.min() < 0.0 or p.max() > 1.0:
            raise ValueError("NormImage intensities must lie in [0, 1]")
        object.__setattr__(self, "pixels", p)
        p.setflags(write=False)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class BinaryImage:
    """Per-pixel classification: 0 = foreground (black), 1 = background (white)."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.uint8)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("BinaryImage needs a 2-D array with positive dimensions")
        if p.max() > 1:
            raise ValueError("BinaryImage pixels must be 0 or 1")
        object.__setattr__(self, "pixels", p)
        p.setflags(write=False)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryImage) and np.array_equal(self.pixels, other.pixels)


def _read_header_tokens(data: bytes, start: int, count: int) -> tuple[list[int], int]:
    """Read `count` whitespace-separated decimal tokens, skipping '#' comments.

    Returns the token values and the offset just past the last token.
    """
    values = []
    pos = start
    n = len(data)
    while len(values) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos] == ord("#"):
            while pos < n and data[pos] not in (10, 13):
                pos += 1
            continue
        if pos >= n:
            raise PnmParseError("unexpected end of header", pos)
        tok_start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos] != ord("#"):
            pos += 1
        token = data[tok_start:pos]
        if not token.isdigit():
            raise PnmParseError(f"non-numeric header token {token!r}", tok_start)
        values.append(int(token))
    return values, pos


def load_pgm(data: bytes) -> GrayImage:
    """Decode a P2 (ASCII) or P5 (binary) graymap with maxval <= 255."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PnmParseError(f"bad magic {magic!r}, expected P2 or P5", 0)
    (width, height, maxval), pos = _read_header_tokens(data, 2, 3)
    if width < 1 or height < 1:
        raise PnmParseError(f"bad dimensions {width}x{height}", 2)
    if maxval > 255 or maxval < 1:
        raise PnmParseError(f"unsupported maxval {maxval}", 2)
    npix = width * height

    if magic == b"P5":
        pos += 1  # single whitespace byte after maxval
        raw = data[pos : pos + npix]
        if len(raw) < npix:
            raise PnmParseError(
                f"truncated pixel data: need {npix} bytes, have {len(raw)}", pos + len(raw)
            )
        pixels = np.frombuffer(raw, dtype=np.uint8, count=npix)
    else:
        try:
            values, pos = _read_header_tokens(data, pos, npix)
        except PnmParseError as err:
            if "end of header" in str(err):
                raise PnmParseError("truncated pixel data", err.offset) from None
            raise
        pixels = np.array(values, dtype=np.int64)
        if pixels.max() > maxval:
            raise PnmParseError(f"pixel value exceeds maxval {maxval}", pos)
        pixels = pixels.astype(np.uint8)
    return GrayImage(pixels.reshape(height, width))


def save_image(img: GrayImage | BinaryImage, fmt: str = "p5") -> bytes:
    """Encode as P5 graymap or P4 packed bitmap.

    P5: a BinaryImage maps 0 -> byte 0 and 1 -> byte 255.
    P4: MSB-first packing, rows padded to a byte boundary; bit 1 = black
    (foreground 0), bit 0 = white (background 1). BinaryImage input only.
    """
    fmt = fmt.lower()
    if fmt == "p5":
        if isinstance(img, BinaryImage):
            raster = (img.pixels.astype(np.uint8) * 255).tobytes()
        else:
            raster = img.pixels.tobytes()
        header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
        return header + raster
    if fmt == "p4":
        if not isinstance(img, BinaryImage):
            raise ValueError("P4 output requires a BinaryImage")
        bits = 1 - img.pixels  # PBM: 1 = black = our foreground 0
        packed = np.packbits(bits, axis=1)  # MSB first, rows byte-padded
        header = f"P4\n{img.width} {img.height}\n".encode("ascii")
        return header + packed.tobytes()
    raise ValueError(f"unknown format {fmt!r}, expected 'p5' or 'p4'")


def normalize(img: GrayImage) -> NormImage:
    """Map 8-bit intensities onto [0, 1] by dividing by 255."""
    return NormImage(img.pixels.astype(np.float64) / 255.0)
