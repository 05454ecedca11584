"""Integral sum image: O(1) local sum / local mean queries per pixel.

The integral image g holds, at each position, the sum of all source pixels
above and to the left (inclusive). Any window sum then costs four table
lookups regardless of window size.

Border policy: windows overhanging the image edge are clamped to the image
rectangle, and means divide by the actual in-window pixel count. Interior
pixels are unaffected and match the four-corner formula exactly. (The source
formulation leaves border handling unstated; clamping is this library's
choice.)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import GrayImage, NormImage


class OpCounter:
    """Counts integral-table lookups, for cost-independence assertions."""

    def __init__(self):
        self.count = 0

    def add(self, n: int = 1):
        self.count += n

    def reset(self):
        self.count = 0


lookup_counter = OpCounter()


@dataclass(frozen=True)
class WindowSpec:
    """Odd square window of side w centered on the query pixel."""

    w: int

    def __post_init__(self):
        if self.w < 3 or self.w % 2 == 0:
            raise ValueError(f"window size must be odd and >= 3, got {self.w}")

    @property
    def c(self) -> int:
        """Half-width: (w - 1) / 2."""
        return (self.w - 1) // 2

    @property
    def d(self) -> int:
        """round(w / 2) = c + 1 for odd w."""
        return self.c + 1


@dataclass(frozen=True)
class IntegralImage:
    """Cumulative sums of a source image.

    `sums[r, c]` is the sum of source pixels in rows 0..r, columns 0..c.
    Integer sources accumulate in int64 (exact, no overflow for 8-bit
    sources at any realistic size); unit-interval sources in float64.
    """

    sums: np.ndarray
    source_domain: str  # "gray" (exact integer) or "norm" (float64)

    @property
    def width(self) -> int:
        return self.sums.shape[1]

    @property
    def height(self) -> int:
        return self.sums.shape[0]

    def padded(self) -> np.ndarray:
        """Sums with an extra zero row/column in front, so that
        padded[r, c] = sum of source[:r, :c]."""
        p = np.zeros((self.height + 1, self.width + 1), dtype=self.sums.dtype)
        p[1:, 1:] = self.sums
        return p


def build_integral(img: GrayImage | NormImage) -> IntegralImage:
    """Build the integral image in a single pass over the source."""
    if isinstance(img, GrayImage):
        src = img.pixels.astype(np.int64)
        domain = "gray"
    else:
        src = img.pixels
        domain = "norm"
    # cumsum along columns then rows realizes the single-pass recurrences;
    # the row accumulation is an explicit loop because numpy's axis-0
    # accumulate is strided and slow on large images
    sums = src.cumsum(axis=1)
    for r in range(1, sums.shape[0]):
        np.add(sums[r], sums[r - 1], out=sums[r])
    return IntegralImage(sums, domain)


def _lookup(g: IntegralImage, r: int, c: int):
    """g value at (row r, col c) inclusive, 0 when an index is out of range."""
    lookup_counter.add()
    if r < 0 or c < 0:
        return g.sums.dtype.type(0)
    return g.sums[r, c]


def local_sum(g: IntegralImage, row: int, col: int, win: WindowSpec):
    """Sum over the w x w window centered at (row, col), clamped to the image.

    Returns (sum, count) where count is the clamped window's pixel count
    (w*w for interior pixels). Four table lookups, independent of w.
    """
    if not (0 <= row < g.height and 0 <= col < g.width):
        raise IndexError(f"({row}, {col}) outside {g.height}x{g.width} image")
    c = win.c
    r0 = max(row - c, 0)
    r1 = min(row + c, g.height - 1)
    c0 = max(col - c, 0)
    c1 = min(col + c, g.width - 1)
    s = (
        _lookup(g, r1, c1)
        - _lookup(g, r0 - 1, c1)
        - _lookup(g, r1, c0 - 1)
        + _lookup(g, r0 - 1, c0 - 1)
    )
    return s, (r1 - r0 + 1) * (c1 - c0 + 1)


def local_mean(g: IntegralImage, row: int, col: int, win: WindowSpec) -> float:
    """Mean over the clamped window centered at (row, col)."""
    s, n = local_sum(g, row, col, win)
    return s / n


def local_mean_map(g: IntegralImage, win: WindowSpec) -> np.ndarray:
    """Per-pixel local mean for the whole image, vectorized.

    Same clamped-window semantics as `local_mean`; still four lookups per
    pixel, so the cost does not depend on the window size.
    """
    h, w = g.height, g.width
    c = win.c
    # Edge-replicating the padded integral turns the clamped four-corner
    # lookup into four plain slices: with e[a, b] = padded[clip(a-c, 0, h),
    # clip(b-c, 0, w)], the window sum at (i, j) is
    # e[i+2c+1, j+2c+1] - e[i, j+2c+1] - e[i+2c+1, j] + e[i, j].
    e = np.empty((h + 2 * c + 1, w + 2 * c + 1), dtype=np.float64)
    e[c + 1 : h + c + 1, c + 1 : w + c + 1] = g.sums
    e[: c + 1, :] = 0.0
    e[:, : c + 1] = 0.0
    e[h + c + 1 :, : w + c + 1] = e[h + c, : w + c + 1]
    e[:, w + c + 1 :] = e[:, w + c : w + c + 1]
    s = 2 * c + 1
    sums = np.empty((h, w), dtype=np.float64)
    np.subtract(e[s : s + h, s : s + w], e[:h, s : s + w], out=sums)
    sums -= e[s : s + h, :w]
    sums += e[:h, :w]
    r0 = np.clip(np.arange(h) - c, 0, h)
    r1 = np.clip(np.arange(h) + c + 1, 0, h)
    c0 = np.clip(np.arange(w) - c, 0, w)
    c1 = np.clip(np.arange(w) + c + 1, 0, w)
    counts = ((r1 - r0)[:, None] * (c1 - c0)[None, :]).astype(np.float64)
    np.divide(sums, counts, out=sums)
    return sums
