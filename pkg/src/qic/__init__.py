"""Block-wise lossy image codec over parameterized-circuit state preparation.

Each k x k pixel tile, L2-normalized, becomes the target of a small
variational circuit; the fitted rotation angles plus the removed norm are
the stored representation. Neighboring tiles warm-start each other, which
is where the speed comes from.
"""

from .ansatz import AnsatzConfig, build_ansatz, param_count
from .codec import (CompressedImage, compression_ratio, decode,
                    decompress_image, encode, psnr, reconstruct_block)
from .optimize import CompileResult, CompileSettings, compile_state, cost, psr_gradient
from .pipeline import (Block, BlockRecord, GridShape, RunMetrics, block_to_state,
                       compress_image, plan_grid, run_metrics, split_blocks)
from .pgm import read_pgm, write_pgm
from .statevec import Gate, apply_gate, fidelity, run_circuit, zero_state
from .transfer import Origin, TransferOutcome, run_transfer, taylor_estimate

__version__ = "0.1.0"

__all__ = [
    "AnsatzConfig", "Block", "BlockRecord", "CompileResult", "CompileSettings",
    "CompressedImage", "Gate", "GridShape", "Origin", "RunMetrics",
    "TransferOutcome", "apply_gate", "block_to_state", "build_ansatz",
    "compile_state", "compress_image", "compression_ratio", "cost", "decode",
    "decompress_image", "encode", "fidelity", "param_count", "plan_grid", "psnr",
    "psr_gradient", "read_pgm", "reconstruct_block", "run_circuit", "run_metrics",
    "run_transfer", "split_blocks", "taylor_estimate", "write_pgm", "zero_state",
]
