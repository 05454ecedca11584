"""Timing harness: runtime of each method across window sizes.

The headline effect at desk scale: the mean-deviation method's runtime is
flat in w, while the naive-statistics baselines grow with w^2. Absolute
seconds vary by machine; only ratios and trends are meaningful, so records
carry best-of-N and median rather than single runs.

Timed regions run strictly sequentially on one task. Every repeat's output
is checksummed and compared, both to catch nondeterminism and to keep the
timed work observable.
"""
from __future__ import annotations

import platform
import time
import zlib
from dataclasses import dataclass, field
from statistics import median

import numpy as np

from .binarize import MethodParams, binarize
from .raster import GrayImage

DEFAULT_WINDOWS = (3, 7, 11, 15, 19, 23, 27, 31, 35)

CSV_HEADER = "method,window,width,height,repeats,best_s,median_s"


@dataclass(frozen=True)
class TimingRecord:
    method: str
    window_size: int
    image_width: int
    image_height: int
    repeats: int
    best_seconds: float
    median_seconds: float


@dataclass(frozen=True)
class TimingTable:
    records: list[TimingRecord]
    descriptor: str = field(default_factory=lambda: platform.platform())


def synthetic_image(width: int = 512, height: int = 512, seed: int = 20120521) -> GrayImage:
    """Deterministic pseudo-random stand-in for a natural benchmark image
    (PCG64 with a fixed seed; the customary 512x512 test photo is not
    redistributable)."""
    rng = np.random.default_rng(seed)
    return GrayImage(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


def time_method(img: GrayImage, params: MethodParams, repeats: int = 5) -> TimingRecord:
    """Time the full binarize pipeline `repeats` times with a monotonic clock.

    All repeats must produce an identical output (checked via checksum).
    """
    if repeats < 3:
        raise ValueError(f"repeats must be >= 3, got {repeats}")
    times = []
    checksum = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = binarize(img, params)
        t1 = time.perf_counter()
        times.append(t1 - t0)
        crc = zlib.crc32(out.pixels.tobytes())
        if checksum is None:
            checksum = crc
        elif crc != checksum:
            raise RuntimeError("binarize output differed between timed repeats")
    return TimingRecord(
        method=params.method,
        window_size=params.w,
        image_width=img.width,
        image_height=img.height,
        repeats=repeats,
        best_seconds=min(times),
        median_seconds=median(times),
    )


def run_sweep(
    img: GrayImage,
    methods: list[str],
    windows: list[int] | None = None,
    repeats: int = 5,
) -> TimingTable:
    """Time every method at every window size, method-major, windows ascending."""
    if windows is None:
        windows = list(DEFAULT_WINDOWS)
    for w in windows:
        if w % 2 == 0 or w < 3:
            raise ValueError(f"window sizes must be odd and >= 3, got {w}")
    records = []
    for method in methods:
        for w in sorted(windows):
            params = MethodParams(method=method, w=w)
            records.append(time_method(img, params, repeats))
    return TimingTable(records)


def emit_csv(table: TimingTable) -> bytes:
    """Serialize to CSV: fixed header, seconds with 6 decimals, newline
    terminated, locale independent."""
    lines = [CSV_HEADER]
    for r in table.records:
        lines.append(
            f"{r.method},{r.window_size},{r.image_width},{r.image_height},"
            f"{r.repeats},{r.best_seconds:.6f},{r.median_seconds:.6f}"
        )
    return ("\n".join(lines) + "\n").encode("ascii")


def format_table(table: TimingTable) -> str:
    """Aligned plain-text view: one row per window size, one column per method."""
    methods = []
    for r in table.records:
        if r.method not in methods:
            methods.append(r.method)
    windows = sorted({r.window_size for r in table.records})
    best = {(r.method, r.window_size): r.best_seconds for r in table.records}
    lines = ["Window  " + "".join(f"{m:>12}" for m in methods)]
    for w in windows:
        cells = "".join(
            f"{best[m, w]:>12.4f}" if (m, w) in best else f"{'-':>12}" for m in methods
        )
        lines.append(f"{w:<8}{cells}")
    return "\n".join(lines)
