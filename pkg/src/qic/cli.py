"""Command-line surface: compress, decompress, bench, inspect.

Exit codes: 0 success, 1 runtime/IO failure, 2 usage error.

The bench subcommand reproduces the fast-vs-naive comparison as CSV with a
fixed, versioned column set (see ``CSV_COLUMNS``). Output is deterministic
by default: the wall_time column is written as 0 unless ``--timings`` is
given, so identical invocations produce byte-identical CSV.
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import codec, pgm, pipeline
from .ansatz import AnsatzConfig, parse_rotation_sequence
from .errors import ConfigurationError, FormatError, UsageError
from .optimize import CompileSettings
from .transfer import Origin

CSV_COLUMNS = ("image", "size", "k", "mode", "mean_cost", "sum_cost",
               "mean_iterations", "transferred_percent", "total_evaluations",
               "param_ratio", "byte_ratio", "wall_time")

PER_BLOCK_COLUMNS = ("row", "col", "origin", "cost", "iterations", "evaluations")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def _settings_from_args(args: argparse.Namespace) -> CompileSettings:
    return CompileSettings(n_iter=args.n_iter, tau=args.tau, alpha=args.alpha)


def _add_settings_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-iter", type=int, default=100,
                        help="max gradient steps per block (default 100)")
    parser.add_argument("--tau", type=float, default=1e-3,
                        help="acceptance cost threshold (default 1e-3)")
    parser.add_argument("--alpha", type=float, default=0.1,
                        help="Adam learning rate (default 0.1)")
    parser.add_argument("--layers", type=int, default=None,
                        help="circuit layers (default: qubit count)")
    parser.add_argument("--rotation", type=str, default="xyz",
                        help="rotation axes per qubit per layer (default xyz)")
    parser.add_argument("--radius", type=int, default=1,
                        help="neighbor radius for fast mode (default 1)")


def _write_block_csv(path: str, records) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(PER_BLOCK_COLUMNS)
        for r in records:
            cost = "" if r.cost is None else _fmt(r.cost)
            writer.writerow([r.row, r.col, r.origin.name, cost,
                             r.iterations, r.evaluations])


def cmd_compress(args: argparse.Namespace) -> int:
    image = pgm.read_pgm(args.input)
    settings = _settings_from_args(args)
    rotation = parse_rotation_sequence(args.rotation)
    records, metrics = pipeline.compress_image(
        image.astype(np.float64), args.k, settings, mode=args.mode,
        radius=args.radius, layers=args.layers, rotation_sequence=rotation)
    grid = pipeline.plan_grid(image.shape[0], image.shape[1], args.k)
    config = AnsatzConfig(grid.n, args.layers if args.layers is not None else grid.n,
                          rotation)
    data = codec.encode(records, grid, config)
    Path(args.output).write_bytes(data)
    if args.metrics_csv:
        _write_block_csv(args.metrics_csv, records)
    print(f"blocks {grid.block_count}")
    print(f"mean_cost {_fmt(metrics.mean_cost)}")
    print(f"mean_iterations {_fmt(metrics.mean_iterations)}")
    print(f"transferred_percent {_fmt(metrics.transferred_percent)}")
    print(f"param_ratio {_fmt(codec.compression_ratio(grid, config))}")
    print(f"byte_ratio {_fmt(codec.byte_ratio(len(data), grid))}")
    return 0


def cmd_decompress(args: argparse.Namespace) -> int:
    compressed = codec.decode(Path(args.input).read_bytes())
    image = codec.decompress_image(compressed)
    pgm.write_pgm(args.output, image, ascii_format=args.ascii)
    print(f"wrote {image.shape[1]}x{image.shape[0]} image to {args.output}")
    if args.reference:
        reference = pgm.read_pgm(args.reference)
        print(f"psnr_db {_fmt(codec.psnr(reference, image))}")
    return 0


def downscale_box(image: np.ndarray, size: int) -> np.ndarray:
    """Area-average downscale to size x size after a centered square crop."""
    height, width = image.shape
    side = min(height, width)
    if size < 1 or size > side:
        raise UsageError(f"target size {size} not in 1..{side}")
    if side % size != 0:
        raise UsageError(f"target size {size} must divide the square side {side}")
    top = (height - side) // 2
    left = (width - side) // 2
    square = np.asarray(image, dtype=np.float64)[top:top + side, left:left + side]
    factor = side // size
    return square.reshape(size, factor, size, factor).mean(axis=(1, 3))


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated integer list, "
                         f"got {text!r}") from None
    if not values:
        raise UsageError(f"{flag} is empty")
    return values


def cmd_bench(args: argparse.Namespace) -> int:
    image = pgm.read_pgm(args.input)
    sizes = _parse_int_list(args.sizes, "--sizes")
    k_values = _parse_int_list(args.k, "--k")
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    for mode in modes:
        if mode not in pipeline.MODES:
            raise UsageError(f"unknown mode {mode!r}")
    settings = _settings_from_args(args)
    rotation = parse_rotation_sequence(args.rotation)

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(CSV_COLUMNS)
        name = Path(args.input).name
        for size in sizes:
            scaled = downscale_box(image, size)
            for k in k_values:
                grid = pipeline.plan_grid(size, size, k)
                layers = args.layers if args.layers is not None else grid.n
                config = AnsatzConfig(grid.n, layers, rotation)
                for mode in modes:
                    records, metrics = pipeline.compress_image(
                        scaled, k, settings, mode=mode, radius=args.radius,
                        layers=layers, rotation_sequence=rotation)
                    encoded = codec.encode(records, grid, config)
                    wall = metrics.wall_time if args.timings else 0.0
                    writer.writerow([
                        name, size, k, mode, _fmt(metrics.mean_cost),
                        _fmt(metrics.sum_cost), _fmt(metrics.mean_iterations),
                        _fmt(metrics.transferred_percent),
                        metrics.total_evaluations,
                        _fmt(codec.compression_ratio(grid, config)),
                        _fmt(codec.byte_ratio(len(encoded), grid)),
                        _fmt(wall),
                    ])
    finally:
        if args.out:
            out.close()
    return 0


def cmd_inspect(args: argparse.Namespace) -> int:
    compressed = codec.decode(Path(args.input).read_bytes())
    records, grid, config = compressed
    print(f"format version {codec.VERSION}")
    print(f"image {grid.width}x{grid.height}")
    print(f"block size k={grid.k}  grid {grid.rows}x{grid.cols} "
          f"({grid.block_count} blocks)")
    print(f"qubits n={grid.n}  layers L={config.layers}  "
          f"params_per_block m={config.param_count}")
    print(f"rotation sequence {''.join(config.rotation_sequence)}")
    print(f"param_ratio {_fmt(codec.compression_ratio(grid, config))}")
    histogram = Counter(record.origin for record in records)
    print("origin histogram:")
    for origin in Origin:
        count = histogram.get(origin, 0)
        share = 100.0 * count / grid.block_count
        print(f"  {origin.name:<14} {count:>8}  {share:6.2f}%")
    scales = [record.scale for record in records if record.scale > 0]
    if scales:
        print(f"scale min/median/max {_fmt(float(np.min(scales)))} / "
              f"{_fmt(float(np.median(scales)))} / {_fmt(float(np.max(scales)))}")
    else:
        print("scale min/median/max n/a (all blocks zero)")
    print("per-block cost: not stored in format v1 "
          "(use compress --metrics-csv at encode time)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qic",
        description="Block-wise image codec storing circuit rotation angles")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compress = sub.add_parser("compress", help="PGM image -> .qic file")
    p_compress.add_argument("input", help="input PGM (P5 or P2)")
    p_compress.add_argument("output", help="output .qic path")
    p_compress.add_argument("--k", type=int, default=2,
                            help="block size, power of two (default 2)")
    p_compress.add_argument("--mode", choices=pipeline.MODES, default="fast")
    _add_settings_flags(p_compress)
    p_compress.add_argument("--metrics-csv", default=None,
                            help="also write per-block metrics CSV here")
    p_compress.set_defaults(func=cmd_compress)

    p_decompress = sub.add_parser("decompress", help=".qic file -> PGM image")
    p_decompress.add_argument("input", help="input .qic path")
    p_decompress.add_argument("output", help="output PGM path")
    p_decompress.add_argument("--reference", default=None,
                              help="original PGM; prints PSNR against it")
    p_decompress.add_argument("--ascii", action="store_true",
                              help="write ASCII P2 instead of binary P5")
    p_decompress.set_defaults(func=cmd_decompress)

    p_bench = sub.add_parser("bench",
                             help="fast-vs-naive sweep over sizes and block sizes")
    p_bench.add_argument("input", help="input PGM")
    p_bench.add_argument("--k", default="2", help="comma list of block sizes")
    p_bench.add_argument("--sizes", default="8,16,32",
                         help="comma list of downscaled square sizes")
    p_bench.add_argument("--modes", default="naive,fast",
                         help="comma list from {naive, fast}")
    _add_settings_flags(p_bench)
    p_bench.add_argument("--out", default=None, help="CSV path (default stdout)")
    p_bench.add_argument("--timings", action="store_true",
                         help="fill the wall_time column (breaks byte-identical "
                              "reruns)")
    p_bench.set_defaults(func=cmd_bench)

    p_inspect = sub.add_parser("inspect", help="print header and block summary")
    p_inspect.add_argument("input", help=".qic path")
    p_inspect.set_defaults(func=cmd_inspect)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
