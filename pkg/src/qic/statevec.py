"""Dense state-vector simulation of small circuits built from RX, RY, RZ and CX.

Conventions, used everywhere in this package:

* A state over ``n`` qubits is a complex128 ndarray of length ``2**n`` with
  unit L2 norm.
* Qubit 0 is the most significant basis bit: for ``n=2`` the basis order is
  ``|00>, |01>, |10>, |11>`` with the left bit belonging to qubit 0.
* Rotations follow ``R_a(phi) = exp(-i * phi * sigma_a / 2)`` for
  ``a in {x, y, z}``, so e.g. ``RX(pi)|0> = [0, -1j]``.
* CX flips the target bit on basis states whose control bit is 1.

Everything here is a pure function of its inputs; a gate application returns
a fresh array and never mutates its argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigurationError, UsageError

MAX_QUBITS = 12

ROTATION_KINDS = ("rx", "ry", "rz")
GATE_KINDS = ROTATION_KINDS + ("cx",)


@dataclass(frozen=True)
class Gate:
    """One circuit operation: a parametric rotation or a CX.

    Rotations carry ``param_index``, the slot in the parameter vector that
    supplies their angle. CX carries ``control`` and no parameter.
    """

    kind: str
    target: int
    control: Optional[int] = None
    param_index: Optional[int] = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ConfigurationError(f"unknown gate kind {self.kind!r}")
        if self.kind == "cx":
            if self.control is None:
                raise ConfigurationError("cx gate needs a control qubit")
            if self.control == self.target:
                raise ConfigurationError("cx control and target must differ")
            if self.param_index is not None:
                raise ConfigurationError("cx gate takes no parameter")
        else:
            if self.control is not None:
                raise ConfigurationError("rotation gates take no control qubit")

    @property
    def is_rotation(self) -> bool:
        return self.kind != "cx"


def num_qubits(state: np.ndarray) -> int:
    """Qubit count of a state vector; its length must be a power of two."""
    dim = state.shape[0]
    n = dim.bit_length() - 1
    if dim != 1 << n:
        raise UsageError(f"state length {dim} is not a power of two")
    return n


def zero_state(n: int) -> np.ndarray:
    """All-qubits-zero state |0...0>: amplitude 1 at index 0."""
    if not 1 <= n <= MAX_QUBITS:
        raise ConfigurationError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    return state


def _check_qubit(q: int, n: int, role: str) -> None:
    if not 0 <= q < n:
        raise ConfigurationError(f"{role} qubit {q} out of range for {n} qubits")


def _apply_rotation_inplace(state: np.ndarray, n: int, kind: str, target: int,
                            angle: float) -> None:
    # Axis layout: reshaping to (2**target, 2, -1) puts qubit `target` on the
    # middle axis because qubit 0 is the most significant bit.
    psi = state.reshape(1 << target, 2, -1)
    c = math.cos(angle / 2.0)
    s = math.sin(angle / 2.0)
    if kind == "rz":
        psi[:, 0, :] *= c - 1j * s
        psi[:, 1, :] *= c + 1j * s
        return
    a = psi[:, 0, :].copy()
    b = psi[:, 1, :]
    if kind == "rx":
        psi[:, 0, :] = c * a - 1j * s * b
        psi[:, 1, :] = -1j * s * a + c * b
    else:  # ry
        psi[:, 0, :] = c * a - s * b
        psi[:, 1, :] = s * a + c * b


@lru_cache(maxsize=None)
def _cx_swap_indices(n: int, control: int, target: int) -> tuple[np.ndarray, np.ndarray]:
    control_bit = 1 << (n - 1 - control)
    target_bit = 1 << (n - 1 - target)
    idx = np.arange(1 << n)
    lower = idx[(idx & control_bit != 0) & (idx & target_bit == 0)]
    return lower, lower | target_bit


def _apply_cx_inplace(state: np.ndarray, n: int, control: int, target: int) -> None:
    i, j = _cx_swap_indices(n, control, target)
    state[i], state[j] = state[j], state[i]


def apply_gate(state: np.ndarray, gate: Gate, angle: Optional[float] = None) -> np.ndarray:
    """Apply one gate to a state, returning the new state.

    ``angle`` must be supplied exactly when the gate is a rotation.
    """
    n = num_qubits(state)
    _check_qubit(gate.target, n, "target")
    out = np.array(state, dtype=np.complex128, copy=True)
    if gate.is_rotation:
        if angle is None:
            raise UsageError(f"{gate.kind} gate requires an angle")
        _apply_rotation_inplace(out, n, gate.kind, gate.target, float(angle))
    else:
        if angle is not None:
            raise UsageError("cx gate takes no angle")
        _check_qubit(gate.control, n, "control")
        _apply_cx_inplace(out, n, gate.control, gate.target)
    return out


@lru_cache(maxsize=None)
def _pair_indices(n: int, target: int) -> tuple[tuple[int, int], ...]:
    """(i0, i1) basis-index pairs differing only in the target bit."""
    target_bit = 1 << (n - 1 - target)
    return tuple((i, i | target_bit)
                 for i in range(1 << n) if not i & target_bit)


def _run_circuit_small(gates: Sequence[Gate], params: np.ndarray, n: int) -> np.ndarray:
    # Scalar path: at dimension <= 8 Python complex arithmetic beats the
    # per-call overhead of vectorized updates by several times.
    state = [0j] * (1 << n)
    state[0] = 1 + 0j
    for gate in gates:
        if gate.kind == "cx":
            control_bit = 1 << (n - 1 - gate.control)
            for i0, i1 in _pair_indices(n, gate.target):
                if i0 & control_bit:
                    state[i0], state[i1] = state[i1], state[i0]
            continue
        half = params[gate.param_index] / 2.0
        c = math.cos(half)
        s = math.sin(half)
        pairs = _pair_indices(n, gate.target)
        if gate.kind == "rx":
            js = 1j * s
            for i0, i1 in pairs:
                a, b = state[i0], state[i1]
                state[i0] = c * a - js * b
                state[i1] = c * b - js * a
        elif gate.kind == "ry":
            for i0, i1 in pairs:
                a, b = state[i0], state[i1]
                state[i0] = c * a - s * b
                state[i1] = s * a + c * b
        else:  # rz
            lo, hi = c - 1j * s, c + 1j * s
            for i0, i1 in pairs:
                state[i0] *= lo
                state[i1] *= hi
    return np.array(state, dtype=np.complex128)


def _validate_circuit(gates: Sequence[Gate], m: int, n: int) -> None:
    for gate in gates:
        _check_qubit(gate.target, n, "target")
        if gate.is_rotation:
            if gate.param_index is None or not 0 <= gate.param_index < m:
                raise ConfigurationError(
                    f"parameter index {gate.param_index} out of range for "
                    f"{m} parameters")
        else:
            _check_qubit(gate.control, n, "control")


def run_circuit(gates: Sequence[Gate], params: np.ndarray, n: int) -> np.ndarray:
    """Run ``gates`` in order on the n-qubit zero state.

    Rotation angles are looked up through each gate's ``param_index``.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise ConfigurationError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    params = np.asarray(params, dtype=np.float64)
    _validate_circuit(gates, params.shape[0], n)
    if n <= 3:
        return _run_circuit_small(gates, params, n)
    state = zero_state(n)
    for gate in gates:
        if gate.is_rotation:
            _apply_rotation_inplace(state, n, gate.kind, gate.target,
                                    params[gate.param_index])
        else:
            _apply_cx_inplace(state, n, gate.control, gate.target)
    return state


def fidelity(state: np.ndarray, target: np.ndarray) -> float:
    """Squared overlap |<target|state>|^2, insensitive to global phase."""
    if state.shape != target.shape:
        raise UsageError(
            f"dimension mismatch: state {state.shape[0]} vs target {target.shape[0]}")
    overlap = np.vdot(target, state)
    return float(overlap.real ** 2 + overlap.imag ** 2)
