"""Fused mean-deviation binarization kernel.

The production path for the mean-deviation method fuses the four-corner
mean lookup, the threshold formula and the comparison into one pass per
pixel, instead of materializing the threshold map. Every arithmetic step
mirrors the materialized numpy path operation for operation, so the two
paths are bit-identical (asserted in the test suite).
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def proposed_binarize_kernel(p: np.ndarray, pix: np.ndarray, k: float, c: int) -> np.ndarray:
    """p: padded integral, p[r, q] = sum of source[:r, :q]; pix: intensities
    in [0, 1]; c: window half-width. Returns uint8 {0, 1} classifications."""
    h, w = pix.shape
    out = np.empty((h, w), dtype=np.uint8)
    bias = 1.0 - 2.0 * k
    for i in range(h):
        r0 = i - c
        if r0 < 0:
            r0 = 0
        r1 = i + c + 1
        if r1 > h:
            r1 = h
        for j in range(w):
            c0 = j - c
            if c0 < 0:
                c0 = 0
            c1 = j + c + 1
            if c1 > w:
                c1 = w
            s = p[r1, c1] - p[r0, c1]
            s -= p[r1, c0]
            s += p[r0, c0]
            m = s / float((r1 - r0) * (c1 - c0))
            d = 1.0 - pix[i, j]
            d += m
            d = 1.0 / d
            d *= m
            d *= k
            t = m * bias
            t += d
            out[i, j] = 1 if pix[i, j] > t else 0
    return out
