import json

import numpy as np
import pytest

from adthresh.binarize import MethodParams, binarize
from adthresh.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, run_cli
from adthresh.integral import WindowSpec, build_integral, local_mean_map
from adthresh.raster import GrayImage, load_pgm, normalize, save_image


@pytest.fixture
def input_pgm(tmp_path):
    rng = np.random.default_rng(71)
    img = GrayImage(rng.integers(0, 256, (32, 32), dtype=np.uint8))
    path = tmp_path / "input.pgm"
    path.write_bytes(save_image(img, "p5"))
    return path, img


def test_binarize_subcommand(tmp_path, input_pgm):
    path, img = input_pgm
    out = tmp_path / "out.pgm"
    code = run_cli(["binarize", "-i", str(path), "-o", str(out),
                    "--method", "proposed", "-w", "15", "-k", "0.06"])
    assert code == EXIT_OK
    expected = binarize(img, MethodParams("proposed", w=15, k=0.06))
    assert load_pgm(out.read_bytes()).pixels.tolist() == (expected.pixels * 255).tolist()


def test_binarize_k_zero_is_mean_threshold(tmp_path, input_pgm):
    path, img = input_pgm
    out = tmp_path / "out.pgm"
    assert run_cli(["binarize", "-i", str(path), "-o", str(out),
                    "--method", "proposed", "-w", "5", "-k", "0"]) == EXIT_OK
    norm = normalize(img)
    mean = local_mean_map(build_integral(norm), WindowSpec(5))
    expected = (norm.pixels > mean).astype(np.uint8) * 255
    assert load_pgm(out.read_bytes()).pixels.tolist() == expected.tolist()


def test_binarize_deterministic(tmp_path, input_pgm):
    path, _ = input_pgm
    out1, out2 = tmp_path / "a.pgm", tmp_path / "b.pgm"
    args = ["binarize", "-i", str(path), "--method", "sauvola"]
    assert run_cli(args + ["-o", str(out1)]) == EXIT_OK
    assert run_cli(args + ["-o", str(out2)]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()


def test_binarize_p4_output(tmp_path, input_pgm):
    path, img = input_pgm
    out = tmp_path / "out.pbm"
    assert run_cli(["binarize", "-i", str(path), "-o", str(out), "--format", "p4"]) == EXIT_OK
    expected = save_image(binarize(img, MethodParams("proposed")), "p4")
    assert out.read_bytes() == expected


def test_dump_threshold(tmp_path, input_pgm):
    path, _ = input_pgm
    out = tmp_path / "out.pgm"
    dump = tmp_path / "tmap.pgm"
    assert run_cli(["binarize", "-i", str(path), "-o", str(out),
                    "--dump-threshold", str(dump)]) == EXIT_OK
    tmap = load_pgm(dump.read_bytes())
    assert (tmap.height, tmap.width) == (32, 32)


def test_even_window_exit_code(tmp_path, input_pgm, capsys):
    path, _ = input_pgm
    out = tmp_path / "out.pgm"
    code = run_cli(["binarize", "-i", str(path), "-o", str(out),
                    "--method", "proposed", "-w", "4"])
    assert code == EXIT_VALIDATION
    assert "odd" in capsys.readouterr().err
    assert not out.exists()


def test_unknown_flag_exit_code(capsys):
    assert run_cli(["binarize", "--frobnicate"]) == EXIT_USAGE
    assert capsys.readouterr().err != ""


def test_unreadable_file_exit_code(tmp_path, capsys):
    out = tmp_path / "out.pgm"
    code = run_cli(["binarize", "-i", str(tmp_path / "missing.pgm"), "-o", str(out)])
    assert code == EXIT_IO
    assert not out.exists()


def test_malformed_input_exit_code(tmp_path):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P5\n2 2\n255\n\x00")
    code = run_cli(["binarize", "-i", str(bad), "-o", str(tmp_path / "out.pgm")])
    assert code == EXIT_IO


def test_compare_writes_four_outputs(tmp_path, input_pgm):
    path, img = input_pgm
    outdir = tmp_path / "cmp"
    assert run_cli(["compare", "-i", str(path), "--outdir", str(outdir)]) == EXIT_OK
    files = sorted(p.name for p in outdir.iterdir())
    assert files == [
        "input.bernsen.pgm",
        "input.manifest.json",
        "input.niblack.pgm",
        "input.proposed.pgm",
        "input.sauvola.pgm",
    ]
    manifest = json.loads((outdir / "input.manifest.json").read_text())
    assert len(manifest["outputs"]) == 4
    for entry in manifest["outputs"]:
        expected = binarize(img, MethodParams(entry["method"]))
        written = load_pgm((outdir / entry["file"]).read_bytes())
        assert written.pixels.tolist() == (expected.pixels * 255).tolist()


def test_bench_subcommand(tmp_path, input_pgm, capsys):
    path, _ = input_pgm
    csv_path = tmp_path / "times.csv"
    code = run_cli(["bench", "-i", str(path), "--methods", "proposed",
                    "--windows", "3,5", "--repeats", "3", "--csv", str(csv_path)])
    assert code == EXIT_OK
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0] == "method,window,width,height,repeats,best_s,median_s"
    assert len(lines) == 3
    assert "proposed" in capsys.readouterr().out


def test_bench_even_window(tmp_path, input_pgm):
    path, _ = input_pgm
    assert run_cli(["bench", "-i", str(path), "--windows", "3,4"]) == EXIT_VALIDATION
