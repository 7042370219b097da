"""Parameter transfer between neighboring blocks.

If angles ``theta_x`` prepare one block's state well and a nearby block ``y``
is similar, a full fit from scratch is wasted work. Linearizing the cost of
``y`` around ``theta_x`` gives a single scalar equation in the parameter
move; its minimum-norm solution (rank-1 pseudo-inverse of the gradient) is

    theta_tilde = theta_x - grad * cost / ||grad||^2

which drives the linearized cost to zero in one closed-form step.

``run_transfer`` wraps this in an acceptance ladder: reuse a neighbor's
angles outright if they are already below tau, otherwise try the one-step
estimate, otherwise fall back to a warm-started fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .ansatz import AnsatzConfig
from .errors import DegenerateGradient, UsageError
from .optimize import CompileSettings, compile_state, cost, psr_gradient

GRAD_NORM_SQ_FLOOR = 1e-12


class Origin(Enum):
    """How a block's angles were obtained. Values double as wire tags."""

    ZERO = 0            # all-zero block, no circuit parameters stored
    COLD_COMPILED = 1   # full fit from the all-ones seed
    REUSED = 2          # a neighbor's angles accepted as-is
    ESTIMATED = 3       # closed-form one-step correction accepted
    WARM_COMPILED = 4   # fit seeded from the correction (or best neighbor)


TRANSFERRED_ORIGINS = frozenset({Origin.REUSED, Origin.ESTIMATED})


@dataclass(frozen=True)
class TransferOutcome:
    theta: np.ndarray
    cost: float
    origin: Origin
    iterations_used: int
    evaluations_used: int


def taylor_estimate(theta_x: np.ndarray, cost_y_at_x: float,
                    grad_y_at_x: np.ndarray) -> np.ndarray:
    """Minimum-norm first-order correction of ``theta_x`` toward zero cost.

    Raises :class:`DegenerateGradient` when the gradient is too small for the
    division to be meaningful; callers fall back to a warm-started fit.
    """
    grad = np.asarray(grad_y_at_x, dtype=np.float64)
    theta_x = np.asarray(theta_x, dtype=np.float64)
    if grad.shape != theta_x.shape:
        raise UsageError("gradient and parameter lengths differ")
    norm_sq = float(np.dot(grad, grad))
    if norm_sq <= GRAD_NORM_SQ_FLOOR:
        raise DegenerateGradient(f"gradient norm^2 {norm_sq:.3e} below "
                                 f"{GRAD_NORM_SQ_FLOOR:.0e}")
    return theta_x - grad * (float(cost_y_at_x) / norm_sq)


def run_transfer(target_y: np.ndarray,
                 neighbors: Sequence[tuple[np.ndarray, tuple[int, int]]],
                 config: AnsatzConfig,
                 settings: CompileSettings) -> TransferOutcome:
    """Resolve a block given fitted neighbors, cheapest acceptable rung first.

    ``neighbors`` pairs each candidate parameter vector with its (row, col)
    grid position. Ladder:

    1. probe every neighbor with one cost evaluation, keep the argmin
       (ties: lowest raster position); below tau -> ``REUSED``;
    2. one gradient (2m evaluations) plus the closed-form correction and one
       probe of it; below tau -> ``ESTIMATED``;
    3. warm-started fit from the correction -> ``WARM_COMPILED``;
       a degenerate gradient at step 2 warm-starts from the best neighbor
       instead.
    """
    if not neighbors:
        raise UsageError("run_transfer needs at least one neighbor")
    evaluations = 0
    best_theta = None
    best_cost = np.inf
    for theta, position in sorted(neighbors, key=lambda item: item[1]):
        probe = cost(theta, target_y, config)
        evaluations += 1
        if probe < best_cost:
            best_cost = probe
            best_theta = theta
    if best_cost < settings.tau:
        return TransferOutcome(np.array(best_theta, dtype=np.float64), best_cost,
                               Origin.REUSED, 0, evaluations)

    grad = psr_gradient(best_theta, target_y, config)
    evaluations += 2 * config.param_count
    try:
        theta_tilde = taylor_estimate(best_theta, best_cost, grad)
    except DegenerateGradient:
        result = compile_state(best_theta, target_y, config, settings)
        return TransferOutcome(result.theta_star, result.final_cost,
                               Origin.WARM_COMPILED, result.iterations_used,
                               evaluations + result.evaluations_used)

    estimate_cost = cost(theta_tilde, target_y, config)
    evaluations += 1
    if estimate_cost < settings.tau:
        return TransferOutcome(theta_tilde, estimate_cost, Origin.ESTIMATED,
                               0, evaluations)

    result = compile_state(theta_tilde, target_y, config, settings)
    return TransferOutcome(result.theta_star, result.final_cost,
                           Origin.WARM_COMPILED, result.iterations_used,
                           evaluations + result.evaluations_used)
