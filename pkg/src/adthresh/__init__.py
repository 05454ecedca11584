"""Fast local adaptive binarization via integral sum images, with naive
Niblack / Sauvola / Bernsen baselines and a timing harness."""

from .bench import TimingRecord, TimingTable, emit_csv, run_sweep, synthetic_image, time_method
from .binarize import (
    MethodParams,
    ThresholdMap,
    apply_threshold,
    binarize,
    threshold_bernsen,
    threshold_map,
    threshold_niblack,
    threshold_proposed,
    threshold_sauvola,
)
from .integral import IntegralImage, WindowSpec, build_integral, local_mean, local_mean_map, local_sum
from .localstats import WindowStats, naive_window_stats
from .raster import BinaryImage, GrayImage, NormImage, PnmParseError, load_pgm, normalize, save_image

__all__ = [
    "BinaryImage",
    "GrayImage",
    "IntegralImage",
    "MethodParams",
    "NormImage",
    "PnmParseError",
    "ThresholdMap",
    "TimingRecord",
    "TimingTable",
    "WindowSpec",
    "WindowStats",
    "apply_threshold",
    "binarize",
    "build_integral",
    "emit_csv",
    "load_pgm",
    "local_mean",
    "local_mean_map",
    "local_sum",
    "naive_window_stats",
    "normalize",
    "run_sweep",
    "save_image",
    "synthetic_image",
    "threshold_bernsen",
    "threshold_map",
    "threshold_niblack",
    "threshold_proposed",
    "threshold_sauvola",
    "time_method",
]
