#!/usr/bin/env python3
"""Regenerate the checked-in test assets.

* tests/data/moon_256.pgm and tests/data/camera_256.pgm - the classic
  512x512 lunar-surface and cameraman photographs (bundled with
  scikit-image) box-averaged down to 256x256. The moon image drives the
  benchmark-facing acceptance tests; scikit-image is only needed to
  regenerate the files.
* tests/data/golden/*.qic plus matching source PGMs - small compressed
  files covering zero blocks, padded grids and k in {2, 4}, used by the
  byte-exactness tests. Regenerating after a change to the wire format is
  expected; regenerating after numerical changes will churn angle bytes,
  which the round-trip tests do not depend on.
"""

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from qic import codec, pgm, pipeline  # noqa: E402
from qic.ansatz import AnsatzConfig  # noqa: E402
from qic.optimize import CompileSettings  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def make_photos() -> None:
    import skimage.data

    for name, image in (("moon", skimage.data.moon()),
                        ("camera", skimage.data.camera())):
        small = image.astype(np.float64).reshape(256, 2, 256, 2).mean(axis=(1, 3))
        pgm.write_pgm(DATA / f"{name}_256.pgm",
                      np.clip(np.rint(small), 0, 255).astype(np.uint8))
        print(f"wrote {name}_256.pgm")


def gradient_with_hole(height: int, width: int) -> np.ndarray:
    """Small deterministic test pattern with an all-black region."""
    row = np.arange(height, dtype=np.float64)[:, None]
    col = np.arange(width, dtype=np.float64)[None, :]
    image = 40.0 + 18.0 * row + 11.0 * col + 6.0 * np.sin(row * col / 3.0)
    image = np.clip(image, 0, 255)
    image[:2, :2] = 0.0  # guaranteed zero block at k=2
    return np.rint(image)


def make_golden() -> None:
    golden = DATA / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    settings = CompileSettings()
    cases = [
        ("zero_k2", gradient_with_hole(6, 6), 2),    # padded 6x6 grid + zero block
        ("plain_k2", gradient_with_hole(8, 8), 2),
        ("pad_k4", gradient_with_hole(10, 10), 4),   # 10 % 4 != 0 -> padding
    ]
    for name, image, k in cases:
        pgm.write_pgm(golden / f"{name}.pgm", image.astype(np.uint8))
        records, _ = pipeline.compress_image(image, k, settings, mode="fast")
        grid = pipeline.plan_grid(image.shape[0], image.shape[1], k)
        config = AnsatzConfig(grid.n, grid.n)
        data = codec.encode(records, grid, config)
        (golden / f"{name}.qic").write_bytes(data)
        print(f"wrote {name}.qic ({len(data)} bytes, {grid.rows}x{grid.cols} blocks)")


if __name__ == "__main__":
    make_photos()
    make_golden()
