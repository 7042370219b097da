"""Independent reference implementations used to check the fast paths.

Everything here works through explicit 2^n x 2^n matrices: single-qubit
gates are embedded with Kronecker products and CX is built as an explicit
basis permutation. Deliberately shares no code with qic.statevec beyond the
documented conventions (qubit 0 = most significant bit, exp(-i*phi*sigma/2)
rotations).
"""

import numpy as np


def rotation_matrix(axis: str, angle: float) -> np.ndarray:
    c = np.cos(angle / 2.0)
    s = np.sin(angle / 2.0)
    if axis == "x":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if axis == "y":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if axis == "z":
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]])
    raise ValueError(axis)


def embed_single(u: np.ndarray, target: int, n: int) -> np.ndarray:
    """Kronecker embedding; qubit 0 is the leftmost tensor factor."""
    mat = np.eye(1, dtype=complex)
    for q in range(n):
        mat = np.kron(mat, u if q == target else np.eye(2, dtype=complex))
    return mat


def cx_matrix(control: int, target: int, n: int) -> np.ndarray:
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=complex)
    for source in range(dim):
        if (source >> (n - 1 - control)) & 1:
            dest = source ^ (1 << (n - 1 - target))
        else:
            dest = source
        mat[dest, source] = 1.0
    return mat


def dense_circuit_state(gates, params, n: int) -> np.ndarray:
    """Full-matrix product applied to |0...0>."""
    state = np.zeros(1 << n, dtype=complex)
    state[0] = 1.0
    for gate in gates:
        if gate.kind == "cx":
            u = cx_matrix(gate.control, gate.target, n)
        else:
            u = embed_single(rotation_matrix(gate.kind[1], params[gate.param_index]),
                             gate.target, n)
        state = u @ state
    return state


def finite_difference_gradient(f, theta: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central differences, one component at a time."""
    theta = np.asarray(theta, dtype=float)
    grad = np.empty(theta.shape[0])
    for j in range(theta.shape[0]):
        up = theta.copy()
        up[j] += h
        down = theta.copy()
        down[j] -= h
        grad[j] = (f(up) - f(down)) / (2.0 * h)
    return grad
