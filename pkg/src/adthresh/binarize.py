"""Per-pixel threshold maps for the four methods, plus the binarization rule.

Methods (thresholds computed on [0, 1] intensities):

* mean-deviation ("proposed"): T = m * [1 + k * (d / (1 - d) - 1)] with
  d = I - m the mean deviation. Needs only the local mean, served by the
  integral image, so its cost is independent of window size.
* niblack: T = m + k * sigma.
* sauvola: T = m * [1 + k * (sigma / R - 1)]; R is the assumed maximum
  stddev, 0.5 in normalized units (128 on the 8-bit scale).
* bernsen: T = (max + min) / 2, with windows whose contrast max - min falls
  below a floor flagged as single-class and resolved at apply time.

A pixel is foreground (0) iff I <= T; the tie goes to foreground. For an
all-dark uniform region this yields foreground even though such regions are
arguably background; the comparator is kept literal and non-configurable so
outputs stay canonical.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import localstats
from .integral import IntegralImage, WindowSpec, build_integral, local_mean_map
from .raster import BinaryImage, GrayImage, NormImage, normalize

METHODS = ("proposed", "niblack", "sauvola", "bernsen")

_DEFAULT_K = {"proposed": 0.06, "niblack": -0.2, "sauvola": 0.34, "bernsen": 0.0}
_DEFAULT_W = {"proposed": 15, "niblack": 15, "sauvola": 15, "bernsen": 31}


@dataclass(frozen=True)
class MethodParams:
    """Method selector plus window size w, bias k and per-method constants.

    Defaults follow the reported best settings per method: proposed k=0.06
    w=15, niblack k=-0.2 w=15, sauvola k=0.34 w=15 R=0.5, bernsen w=31 with
    contrast floor 15/255.
    """

    method: str
    w: int = 0  # 0 = use per-method default
    k: float | None = None
    r: float = 0.5
    bernsen_contrast_min: float = 15.0 / 255.0
    bernsen_low_contrast_policy: str = "by-threshold-midpoint"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}, expected one of {METHODS}")
        if self.w == 0:
            object.__setattr__(self, "w", _DEFAULT_W[self.method])
        if self.w % 2 == 0 or self.w < 3:
            raise ValueError(f"window size must be odd and >= 3, got {self.w}")
        if self.k is None:
            object.__setattr__(self, "k", _DEFAULT_K[self.method])
        if self.method == "proposed" and not (0.0 <= self.k <= 1.0):
            raise ValueError(f"proposed-method bias k must be in [0, 1], got {self.k}")
        if self.r <= 0:
            raise ValueError(f"sauvola R must be positive, got {self.r}")
        if not (0.0 <= self.bernsen_contrast_min <= 1.0):
            raise ValueError("bernsen contrast floor must be in [0, 1]")
        if self.bernsen_low_contrast_policy != "by-threshold-midpoint":
            raise ValueError("unknown bernsen low-contrast policy")

    @property
    def window(self) -> WindowSpec:
        return WindowSpec(self.w)


@dataclass(frozen=True)
class ThresholdMap:
    """Per-pixel thresholds; `low_contrast_mask` marks bernsen windows whose
    contrast fell below the floor (resolved by the single-class policy)."""

    values: np.ndarray
    low_contrast_mask: np.ndarray | None = None

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]


def threshold_proposed(img: NormImage, g: IntegralImage, params: MethodParams) -> ThresholdMap:
    """Mean-deviation threshold map; uses only the integral-image local mean,
    never a standard deviation."""
    m = local_mean_map(g, params.window)
    # T = m * (1 + k*(dev/(1-dev) - 1)) with dev = I - m. Writing
    # d = 1 - dev this is T = m*(1-2k) + k*m/d, which needs a single
    # scratch array; clamped windows always contain their center, so
    # d > 0 strictly
    d = np.subtract(1.0, img.pixels)
    d += m
    np.reciprocal(d, out=d)
    d *= m
    d *= params.k
    m *= 1.0 - 2.0 * params.k
    m += d
    return ThresholdMap(m)


def threshold_niblack(img: NormImage, params: MethodParams) -> ThresholdMap:
    m, sigma = localstats.mean_stddev_maps(img, params.window)
    return ThresholdMap(m + params.k * sigma)


def threshold_sauvola(img: NormImage, params: MethodParams) -> ThresholdMap:
    m, sigma = localstats.mean_stddev_maps(img, params.window)
    return ThresholdMap(m * (1.0 + params.k * (sigma / params.r - 1.0)))


def threshold_bernsen(img: NormImage, params: MethodParams) -> ThresholdMap:
    vmin, vmax = localstats.minmax_maps(img, params.window)
    return ThresholdMap(
        0.5 * (vmax + vmin),
        low_contrast_mask=(vmax - vmin) < params.bernsen_contrast_min,
    )


def apply_threshold(img: NormImage, tmap: ThresholdMap) -> BinaryImage:
    """b = 0 (foreground) where I <= T, else 1. Low-contrast-flagged pixels
    are single-class: background iff T >= 0.5."""
    if (img.height, img.width) != (tmap.height, tmap.width):
        raise ValueError(
            f"image {img.height}x{img.width} vs threshold map {tmap.height}x{tmap.width}"
        )
    out = (img.pixels > tmap.values).view(np.uint8)
    if tmap.low_contrast_mask is not None:
        out[tmap.low_contrast_mask] = (tmap.values[tmap.low_contrast_mask] >= 0.5).astype(np.uint8)
    return BinaryImage(out)


def threshold_map(img: NormImage, params: MethodParams) -> ThresholdMap:
    """Compute the threshold map for any method."""
    if params.method == "proposed":
        return threshold_proposed(img, build_integral(img), params)
    if params.method == "niblack":
        return threshold_niblack(img, params)
    if params.method == "sauvola":
        return threshold_sauvola(img, params)
    return threshold_bernsen(img, params)


def binarize(img: GrayImage, params: MethodParams) -> BinaryImage:
    """Full pipeline: normalize, threshold map, apply.

    The mean-deviation method runs through a fused per-pixel kernel (no
    materialized threshold map); its output is bit-identical to
    `apply_threshold(norm, threshold_map(norm, params))`.
    """
    norm = normalize(img)
    if params.method == "proposed":
        from ._kernels import proposed_binarize_kernel

        g = build_integral(norm)
        out = proposed_binarize_kernel(g.padded(), norm.pixels, params.k, params.window.c)
        return BinaryImage(out)
    return apply_threshold(norm, threshold_map(norm, params))
