import csv
import io

import numpy as np
import pytest

from adthresh.bench import (
    CSV_HEADER,
    DEFAULT_WINDOWS,
    TimingTable,
    emit_csv,
    format_table,
    run_sweep,
    synthetic_image,
    time_method,
)
from adthresh.binarize import MethodParams, binarize
from adthresh.raster import GrayImage


def small_image(side=24, seed=61):
    rng = np.random.default_rng(seed)
    return GrayImage(rng.integers(0, 256, (side, side), dtype=np.uint8))


def test_synthetic_image_deterministic():
    a = synthetic_image(64, 48)
    b = synthetic_image(64, 48)
    assert a == b
    assert (a.height, a.width) == (48, 64)


def test_time_method_record_fields():
    rec = time_method(small_image(), MethodParams("proposed", w=3), repeats=3)
    assert rec.method == "proposed"
    assert rec.window_size == 3
    assert (rec.image_width, rec.image_height) == (24, 24)
    assert rec.repeats == 3
    assert 0 < rec.best_seconds <= rec.median_seconds


def test_time_method_tiny_image():
    img = GrayImage(np.array([[128]], dtype=np.uint8))
    rec = time_method(img, MethodParams("proposed", w=3), repeats=5)
    assert rec.best_seconds <= rec.median_seconds


def test_time_method_rejects_low_repeats():
    with pytest.raises(ValueError):
        time_method(small_image(), MethodParams("proposed", w=3), repeats=2)


def test_timing_does_not_alter_output():
    img = small_image()
    params = MethodParams("sauvola", w=5)
    before = binarize(img, params)
    time_method(img, params, repeats=3)
    assert binarize(img, params) == before


def test_run_sweep_counts_and_order():
    table = run_sweep(small_image(), ["proposed", "sauvola"], [7, 3], repeats=3)
    keys = [(r.method, r.window_size) for r in table.records]
    assert keys == [("proposed", 3), ("proposed", 7), ("sauvola", 3), ("sauvola", 7)]
    assert len(set(keys)) == len(keys)


def test_run_sweep_single_cell():
    table = run_sweep(small_image(), ["niblack"], [3], repeats=3)
    assert len(table.records) == 1


def test_run_sweep_rejects_even_window():
    with pytest.raises(ValueError, match="odd"):
        run_sweep(small_image(), ["proposed"], [3, 4], repeats=3)


def test_default_windows():
    assert DEFAULT_WINDOWS == (3, 7, 11, 15, 19, 23, 27, 31, 35)


def test_emit_csv_empty():
    assert emit_csv(TimingTable([])) == (CSV_HEADER + "\n").encode()


def test_emit_csv_line_count():
    table = run_sweep(small_image(), ["proposed"], [15], repeats=5)
    data = emit_csv(table)
    assert data.endswith(b"\n")
    assert len(data.decode().strip().split("\n")) == 2


def test_emit_csv_round_trip():
    table = run_sweep(small_image(), ["proposed", "niblack"], [3, 5], repeats=3)
    rows = list(csv.DictReader(io.StringIO(emit_csv(table).decode())))
    assert len(rows) == len(table.records)
    for row, rec in zip(rows, table.records):
        assert row["method"] == rec.method
        assert int(row["window"]) == rec.window_size
        assert int(row["width"]) == rec.image_width
        assert int(row["height"]) == rec.image_height
        assert int(row["repeats"]) == rec.repeats
        assert float(row["best_s"]) == pytest.approx(rec.best_seconds, abs=1e-6)
        assert float(row["median_s"]) == pytest.approx(rec.median_seconds, abs=1e-6)


def test_baseline_time_grows_with_window():
    img = synthetic_image(160, 160, seed=62)
    for method in ("sauvola", "niblack"):
        times = []
        for w in (3, 11, 19, 27):
            times.append(time_method(img, MethodParams(method, w=w), repeats=3).best_seconds)
        # non-decreasing beyond noise: allow single-step inversions up to 10%
        for earlier, later in zip(times, times[1:]):
            assert later >= 0.9 * earlier, (method, times)
        assert times[-1] > times[0]


def test_format_table_layout():
    table = run_sweep(small_image(), ["proposed", "sauvola"], [3, 5], repeats=3)
    text = format_table(table)
    lines = text.split("\n")
    assert "proposed" in lines[0] and "sauvola" in lines[0]
    assert len(lines) == 3
