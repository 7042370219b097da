"""Cost function, parameter-shift gradients, Adam, and the fitting loop.

The compression target for one block is a unit vector; fitting minimizes
``1 - |<target|U(theta)|0>|^2`` over the circuit angles. Gradients use the
exact two-point shift rule for ``exp(-i*phi*sigma/2)`` rotations: component
``j`` is ``(C(theta + pi/2 e_j) - C(theta - pi/2 e_j)) / 2``.

Evaluation accounting: every call of the cost function counts as one circuit
evaluation, so a gradient costs ``2m`` and one fitting iteration costs
``2m + 1``. Results report both the gradient steps taken and the total
evaluations consumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ansatz import AnsatzConfig, build_ansatz
from .errors import ConfigurationError, UsageError
from .statevec import fidelity, run_circuit

PSR_SHIFT = math.pi / 2.0


@dataclass(frozen=True)
class CompileSettings:
    """Fitting-loop knobs. Defaults match the benchmark configuration."""

    n_iter: int = 100
    tau: float = 1e-3
    alpha: float = 0.1
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8

    def __post_init__(self):
        if self.n_iter < 1:
            raise ConfigurationError(f"n_iter must be >= 1, got {self.n_iter}")
        if not self.tau > 0:
            raise ConfigurationError(f"tau must be positive, got {self.tau}")
        if not self.alpha > 0:
            raise ConfigurationError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True)
class CompileResult:
    theta_star: np.ndarray
    final_cost: float
    iterations_used: int       # gradient steps taken
    evaluations_used: int      # total cost-function calls


@dataclass(frozen=True)
class AdamState:
    """First and second moment accumulators."""

    m: np.ndarray
    v: np.ndarray

    @classmethod
    def zeros(cls, size: int) -> "AdamState":
        return cls(np.zeros(size), np.zeros(size))


def _check_shapes(theta: np.ndarray, target: np.ndarray, config: AnsatzConfig) -> None:
    if theta.shape[0] != config.param_count:
        raise UsageError(f"expected {config.param_count} parameters, got {theta.shape[0]}")
    if target.shape[0] != 1 << config.n:
        raise UsageError(f"target dimension {target.shape[0]} does not match "
                         f"{config.n} qubits")


def cost(theta: np.ndarray, target: np.ndarray, config: AnsatzConfig) -> float:
    """Infidelity of the prepared state against ``target``; one evaluation."""
    theta = np.asarray(theta, dtype=np.float64)
    _check_shapes(theta, target, config)
    state = run_circuit(build_ansatz(config), theta, config.n)
    return 1.0 - fidelity(state, target)


def psr_gradient(theta: np.ndarray, target: np.ndarray, config: AnsatzConfig) -> np.ndarray:
    """Exact gradient via the shift rule; costs ``2m`` evaluations."""
    theta = np.array(theta, dtype=np.float64)
    _check_shapes(theta, target, config)
    grad = np.empty(theta.shape[0])
    for j in range(theta.shape[0]):
        original = theta[j]
        theta[j] = original + PSR_SHIFT
        plus = cost(theta, target, config)
        theta[j] = original - PSR_SHIFT
        minus = cost(theta, target, config)
        theta[j] = original
        grad[j] = (plus - minus) / 2.0
    return grad


def adam_step(theta: np.ndarray, grad: np.ndarray, state: AdamState, t: int,
              settings: CompileSettings) -> tuple[np.ndarray, AdamState]:
    """One bias-corrected Adam update; ``t`` is the 1-based step index."""
    if t < 1:
        raise UsageError(f"step index must be >= 1, got {t}")
    if theta.shape != grad.shape:
        raise UsageError("theta and gradient lengths differ")
    b1, b2 = settings.adam_beta1, settings.adam_beta2
    m = b1 * state.m + (1.0 - b1) * grad
    v = b2 * state.v + (1.0 - b2) * grad * grad
    m_hat = m / (1.0 - b1 ** t)
    v_hat = v / (1.0 - b2 ** t)
    new_theta = theta - settings.alpha * m_hat / (np.sqrt(v_hat) + settings.adam_eps)
    return new_theta, AdamState(m, v)


def compile_state(theta0: np.ndarray, target: np.ndarray, config: AnsatzConfig,
                  settings: CompileSettings) -> CompileResult:
    """Fit circuit angles to ``target``, stopping once the cost drops below tau.

    Runs at most ``n_iter`` gradient steps. Non-convergence is a valid result:
    the angles after the last step are returned with their (>= tau) cost.
    """
    theta = np.array(theta0, dtype=np.float64)
    _check_shapes(theta, target, config)
    adam = AdamState.zeros(theta.shape[0])
    two_m = 2 * theta.shape[0]
    evaluations = 0
    for t in range(settings.n_iter):
        current = cost(theta, target, config)
        evaluations += 1
        if current < settings.tau:
            return CompileResult(theta, current, t, evaluations)
        grad = psr_gradient(theta, target, config)
        evaluations += two_m
        theta, adam = adam_step(theta, grad, adam, t + 1, settings)
    final = cost(theta, target, config)
    evaluations += 1
    return CompileResult(theta, final, settings.n_iter, evaluations)
