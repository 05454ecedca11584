"""Brute-force windowed statistics for the baseline thresholding methods.

`naive_window_stats` is the literal per-pixel double loop; it doubles as the
test oracle for the integral-image path. The `*_maps` routines compute the
same statistics for every pixel at once but deliberately keep the
O(w^2 * n^2) work profile (one full-image accumulation per window offset):
the point of the benchmark is the cost asymmetry between window-dependent
baselines and the window-independent integral-image path, so the baselines
must not be optimized past that.

Standard deviation is the population form (divide by count, not count - 1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .integral import OpCounter, WindowSpec
from .raster import NormImage

stddev_counter = OpCounter()


@dataclass(frozen=True)
class WindowStats:
    mean: float
    stddev: float
    min: float
    max: float
    count: int


def naive_window_stats(img: NormImage, row: int, col: int, win: WindowSpec) -> WindowStats:
    """Statistics over the border-clamped window by direct double loop."""
    h, w = img.height, img.width
    if not (0 <= row < h and 0 <= col < w):
        raise IndexError(f"({row}, {col}) outside {h}x{w} image")
    c = win.c
    pix = img.pixels
    total = 0.0
    vmin = np.inf
    vmax = -np.inf
    count = 0
    for r in range(max(row - c, 0), min(row + c, h - 1) + 1):
        for q in range(max(col - c, 0), min(col + c, w - 1) + 1):
            v = pix[r, q]
            total += v
            vmin = min(vmin, v)
            vmax = max(vmax, v)
            count += 1
    if vmin == vmax:
        # constant window: report the exact value, stddev exactly 0
        stddev_counter.add()
        return WindowStats(vmin, 0.0, vmin, vmax, count)
    mean = total / count
    sq = 0.0
    for r in range(max(row - c, 0), min(row + c, h - 1) + 1):
        for q in range(max(col - c, 0), min(col + c, w - 1) + 1):
            sq += (pix[r, q] - mean) ** 2
    stddev_counter.add()
    return WindowStats(mean, (sq / count) ** 0.5, vmin, vmax, count)


def _shifted_windows(pixels: np.ndarray, win: WindowSpec, fill: float):
    """Yield the w^2 border-padded shifted views of the image."""
    h, w = pixels.shape
    c = win.c
    padded = np.full((h + 2 * c, w + 2 * c), fill, dtype=np.float64)
    padded[c : c + h, c : c + w] = pixels
    for dr in range(win.w):
        for dc in range(win.w):
            yield padded[dr : dr + h, dc : dc + w]


def window_count_map(shape: tuple[int, int], win: WindowSpec) -> np.ndarray:
    """Clamped-window pixel count at every position."""
    h, w = shape
    c = win.c
    rows = np.minimum(np.arange(h) + c, h - 1) - np.maximum(np.arange(h) - c, 0) + 1
    cols = np.minimum(np.arange(w) + c, w - 1) - np.maximum(np.arange(w) - c, 0) + 1
    return rows[:, None] * cols[None, :]


def mean_stddev_maps(img: NormImage, win: WindowSpec):
    """Per-pixel clamped-window mean and population stddev maps."""
    total = np.zeros_like(img.pixels)
    sq = np.zeros_like(img.pixels)
    for view in _shifted_windows(img.pixels, win, 0.0):
        total += view
        sq += view * view
    count = window_count_map(img.pixels.shape, win)
    mean = total / count
    var = np.maximum(sq / count - mean * mean, 0.0)
    stddev_counter.add()
    return mean, np.sqrt(var)


def minmax_maps(img: NormImage, win: WindowSpec):
    """Per-pixel clamped-window min and max maps."""
    vmin = np.full_like(img.pixels, np.inf)
    vmax = np.full_like(img.pixels, -np.inf)
    for view in _shifted_windows(img.pixels, win, np.inf):
        np.minimum(vmin, view, out=vmin)
    for view in _shifted_windows(img.pixels, win, -np.inf):
        np.maximum(vmax, view, out=vmax)
    return vmin, vmax
