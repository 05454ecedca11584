"""Command-line front end: binarize / compare / bench over PGM files.

Exit codes: 0 success, 1 usage, 2 I/O, 3 invalid parameter. No output file
is written unless the whole computation succeeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bench import DEFAULT_WINDOWS, emit_csv, format_table, run_sweep
from .binarize import METHODS, MethodParams, apply_threshold, threshold_map
from .raster import BinaryImage, GrayImage, PnmParseError, load_pgm, normalize, save_image

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="adthresh", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_bin = sub.add_parser("binarize", help="binarize one image with one method")
    p_bin.add_argument("-i", "--input", required=True, help="input PGM (P2 or P5)")
    p_bin.add_argument("-o", "--output", required=True, help="output image path")
    p_bin.add_argument("--method", default="proposed", choices=METHODS)
    p_bin.add_argument("-w", "--window", type=int, default=0, help="odd window size (0 = method default)")
    p_bin.add_argument("-k", "--bias", type=float, default=None)
    p_bin.add_argument("-R", "--sauvola-range", type=float, default=0.5)
    p_bin.add_argument("--bernsen-contrast", type=float, default=15.0 / 255.0)
    p_bin.add_argument("--format", default="p5", choices=["p5", "p4"])
    p_bin.add_argument("--dump-threshold", default=None, metavar="PATH",
                       help="also write the threshold map quantized to a P5 image")

    p_cmp = sub.add_parser("compare", help="run all four methods at their default settings")
    p_cmp.add_argument("-i", "--input", required=True)
    p_cmp.add_argument("--outdir", required=True)
    p_cmp.add_argument("--format", default="p5", choices=["p5", "p4"])

    p_bench = sub.add_parser("bench", help="timing sweep over window sizes")
    p_bench.add_argument("-i", "--input", required=True)
    p_bench.add_argument("--methods", default=",".join(METHODS),
                         help="comma-separated subset of methods")
    p_bench.add_argument("--windows", default=",".join(map(str, DEFAULT_WINDOWS)),
                         help="comma-separated odd window sizes")
    p_bench.add_argument("--repeats", type=int, default=5)
    p_bench.add_argument("--csv", default=None, metavar="PATH")
    return parser


def _load(path: str) -> GrayImage:
    try:
        return load_pgm(Path(path).read_bytes())
    except PnmParseError:
        raise
    except OSError as err:
        raise OSError(f"cannot read {path}: {err.strerror or err}") from err


def _write(path: Path, data: bytes):
    try:
        path.write_bytes(data)
    except OSError as err:
        path.unlink(missing_ok=True)
        raise OSError(f"cannot write {path}: {err.strerror or err}") from err


def _method_params(args) -> MethodParams:
    return MethodParams(
        method=args.method,
        w=args.window,
        k=args.bias,
        r=args.sauvola_range,
        bernsen_contrast_min=args.bernsen_contrast,
    )


def _cmd_binarize(args) -> int:
    params = _method_params(args)
    gray = _load(args.input)
    norm = normalize(gray)
    tmap = threshold_map(norm, params)
    out = apply_threshold(norm, tmap)
    _write(Path(args.output), save_image(out, args.format))
    if args.dump_threshold:
        quantized = GrayImage(np.clip(np.rint(tmap.values * 255), 0, 255).astype(np.uint8))
        _write(Path(args.dump_threshold), save_image(quantized, "p5"))
    return EXIT_OK


def _cmd_compare(args) -> int:
    gray = _load(args.input)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    manifest = {"input": str(args.input), "outputs": []}
    for method in METHODS:
        params = MethodParams(method=method)
        norm = normalize(gray)
        out = apply_threshold(norm, threshold_map(norm, params))
        suffix = "pbm" if args.format == "p4" else "pgm"
        path = outdir / f"{stem}.{method}.{suffix}"
        _write(path, save_image(out, args.format))
        manifest["outputs"].append(
            {"method": method, "window": params.w, "k": params.k, "file": path.name}
        )
    _write(outdir / f"{stem}.manifest.json", json.dumps(manifest, indent=2).encode())
    return EXIT_OK


def _cmd_bench(args) -> int:
    gray = _load(args.input)
    try:
        methods = [m.strip() for m in args.methods.split(",") if m.strip()]
        windows = [int(w) for w in args.windows.split(",") if w.strip()]
    except ValueError:
        raise ValueError(f"bad --windows list {args.windows!r}")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
    table = run_sweep(gray, methods, windows, args.repeats)
    print(format_table(table))
    if args.csv:
        _write(Path(args.csv), emit_csv(table))
    return EXIT_OK


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.subcommand == "binarize":
            return _cmd_binarize(args)
        if args.subcommand == "compare":
            return _cmd_compare(args)
        return _cmd_bench(args)
    except (PnmParseError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
