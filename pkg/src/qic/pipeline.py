"""Image-to-parameters orchestration.

An image is zero-padded to a multiple of the block size ``k``, cut into
``k x k`` tiles, and each tile's row-major pixel vector is L2-normalized
into a unit target vector over ``n = 2*log2(k)`` qubits (``k`` must be a
power of two so the vector length ``k^2`` is a power of four).

Blocks are processed in raster order. In ``naive`` mode every non-zero block
is fitted from the all-ones seed. In ``fast`` mode the already-processed
neighbors within Chebyshev radius ``R`` offer their angles first and a block
only falls back to fitting when neither reuse nor the one-step correction
reaches tau. All-zero tiles (including pure padding) are recorded with scale
0 and never touch the optimizer, and they are not offered as neighbors.

Two runs with identical inputs and settings produce bit-identical records;
there is no randomness anywhere in the path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .ansatz import DEFAULT_ROTATION_SEQUENCE, AnsatzConfig
from .errors import ConfigurationError, UsageError
from .optimize import CompileSettings, compile_state
from .transfer import TRANSFERRED_ORIGINS, Origin, run_transfer

MODES = ("naive", "fast")


@dataclass(frozen=True)
class GridShape:
    """Block-grid geometry derived from image dimensions and block size."""

    rows: int        # blocks per column (N)
    cols: int        # blocks per row (M)
    pad_rows: int    # zero rows appended at the bottom
    pad_cols: int    # zero columns appended at the right
    k: int
    n: int           # qubits per block, 2*log2(k)

    @property
    def height(self) -> int:
        """Original image height before padding."""
        return self.rows * self.k - self.pad_rows

    @property
    def width(self) -> int:
        return self.cols * self.k - self.pad_cols

    @property
    def block_count(self) -> int:
        return self.rows * self.cols


@dataclass
class Block:
    """One k x k pixel tile at 1-based grid position (row, col)."""

    pixels: np.ndarray
    row: int
    col: int


@dataclass
class BlockRecord:
    """Per-block result: angles, scale factor, and fitting bookkeeping.

    ``cost`` is None on records read back from a file (the wire format only
    stores what reconstruction needs).
    """

    theta: np.ndarray
    scale: float
    cost: Optional[float]
    origin: Origin
    iterations: int
    evaluations: int
    row: int
    col: int


@dataclass(frozen=True)
class RunMetrics:
    """Aggregates over one compression run plus the per-block rows."""

    mean_cost: float
    sum_cost: float
    mean_iterations: float
    transferred_percent: float
    total_evaluations: int
    wall_time: float
    per_block: tuple = field(repr=False, default=())


def _is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


def plan_grid(height: int, width: int, k: int) -> GridShape:
    """Padding and block counts for an image of the given dimensions."""
    if height < 1 or width < 1:
        raise ConfigurationError(f"image dimensions must be positive, got "
                                 f"{height}x{width}")
    if k < 2 or not _is_power_of_two(k):
        raise ConfigurationError(f"block size must be a power of two >= 2, got {k}")
    pad_rows = (k - height % k) % k
    pad_cols = (k - width % k) % k
    n = 2 * (k.bit_length() - 1)
    return GridShape(rows=(height + pad_rows) // k, cols=(width + pad_cols) // k,
                     pad_rows=pad_rows, pad_cols=pad_cols, k=k, n=n)


def split_blocks(image: np.ndarray, grid: GridShape) -> list[Block]:
    """Zero-pad bottom/right and cut into raster-ordered k x k tiles."""
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.shape != (grid.height, grid.width):
        raise UsageError(f"image shape {image.shape} does not match grid "
                         f"{grid.height}x{grid.width}")
    padded = np.pad(image, ((0, grid.pad_rows), (0, grid.pad_cols)))
    k = grid.k
    blocks = []
    for i in range(grid.rows):
        for j in range(grid.cols):
            tile = padded[i * k:(i + 1) * k, j * k:(j + 1) * k].copy()
            blocks.append(Block(tile, row=i + 1, col=j + 1))
    return blocks


def block_to_state(block: Block) -> tuple[Optional[np.ndarray], float]:
    """Row-major flatten and L2-normalize; all-zero tiles yield (None, 0.0)."""
    vec = block.pixels.reshape(-1)
    scale = float(np.linalg.norm(vec))
    if scale == 0.0:
        return None, 0.0
    return (vec / scale).astype(np.complex128), scale


def _neighbor_candidates(records: Sequence[BlockRecord], grid: GridShape,
                         row: int, col: int, radius: int):
    """Fitted predecessors of (row, col) within Chebyshev distance radius."""
    index = (row - 1) * grid.cols + (col - 1)
    out = []
    for di in range(-radius, radius + 1):
        for dj in range(-radius, radius + 1):
            if di == 0 and dj == 0:
                continue
            r, c = row + di, col + dj
            if not (1 <= r <= grid.rows and 1 <= c <= grid.cols):
                continue
            neighbor_index = (r - 1) * grid.cols + (c - 1)
            if neighbor_index >= index:
                continue
            record = records[neighbor_index]
            if record.origin is Origin.ZERO:
                continue
            out.append((record.theta, (r, c)))
    return out


def compress_image(image: np.ndarray, k: int,
                   settings: Optional[CompileSettings] = None,
                   mode: str = "fast", radius: int = 1,
                   layers: Optional[int] = None,
                   rotation_sequence: tuple[str, str, str] = DEFAULT_ROTATION_SEQUENCE,
                   ) -> tuple[list[BlockRecord], RunMetrics]:
    """Fit every block of a grayscale image; returns records plus metrics.

    ``layers`` defaults to the qubit count. ``radius`` is the Chebyshev
    neighbor radius used in fast mode.
    """
    if mode not in MODES:
        raise UsageError(f"mode must be one of {MODES}, got {mode!r}")
    if radius < 1:
        raise ConfigurationError(f"neighbor radius must be >= 1, got {radius}")
    if settings is None:
        settings = CompileSettings()
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2:
        raise UsageError(f"expected a 2-D grayscale image, got shape {image.shape}")
    if np.any(image < 0):
        raise UsageError("pixel values must be non-negative")

    grid = plan_grid(image.shape[0], image.shape[1], k)
    config = AnsatzConfig(grid.n, layers if layers is not None else grid.n,
                          rotation_sequence)
    seed = np.ones(config.param_count)

    started = time.perf_counter()
    records: list[BlockRecord] = []
    for block in split_blocks(image, grid):
        target, scale = block_to_state(block)
        if target is None:
            records.append(BlockRecord(seed.copy(), 0.0, 0.0, Origin.ZERO, 0, 0,
                                       block.row, block.col))
            continue
        if mode == "naive":
            result = compile_state(seed, target, config, settings)
            records.append(BlockRecord(result.theta_star, scale, result.final_cost,
                                       Origin.COLD_COMPILED, result.iterations_used,
                                       result.evaluations_used, block.row, block.col))
            continue
        neighbors = _neighbor_candidates(records, grid, block.row, block.col, radius)
        if not neighbors:
            result = compile_state(seed, target, config, settings)
            records.append(BlockRecord(result.theta_star, scale, result.final_cost,
                                       Origin.COLD_COMPILED, result.iterations_used,
                                       result.evaluations_used, block.row, block.col))
            continue
        outcome = run_transfer(target, neighbors, config, settings)
        records.append(BlockRecord(outcome.theta, scale, outcome.cost,
                                   outcome.origin, outcome.iterations_used,
                                   outcome.evaluations_used, block.row, block.col))
    wall = time.perf_counter() - started
    return records, run_metrics(records, wall_time=wall)


def run_metrics(records: Sequence[BlockRecord], wall_time: float = 0.0) -> RunMetrics:
    """Aggregate costs, iterations, transfer share and evaluation totals."""
    if not records:
        raise UsageError("run_metrics needs at least one record")
    costs = [0.0 if r.cost is None else r.cost for r in records]
    iterations = [r.iterations for r in records]
    transferred = sum(1 for r in records if r.origin in TRANSFERRED_ORIGINS)
    rows = tuple((r.row, r.col, r.origin.name, r.cost, r.iterations, r.evaluations)
                 for r in records)
    return RunMetrics(
        mean_cost=float(np.mean(costs)),
        sum_cost=float(np.sum(costs)),
        mean_iterations=float(np.mean(iterations)),
        transferred_percent=100.0 * transferred / len(records),
        total_evaluations=int(sum(r.evaluations for r in records)),
        wall_time=wall_time,
        per_block=rows,
    )
