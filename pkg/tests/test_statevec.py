"""Simulator unit tests: known gate actions, invariants, dense-matrix oracle."""

import numpy as np
import pytest

from qic.errors import ConfigurationError, UsageError
from qic.statevec import (Gate, apply_gate, fidelity, num_qubits, run_circuit,
                          zero_state)

from oracles import dense_circuit_state

RNG = np.random.default_rng(20240811)


def random_gate_sequence(rng, n, length):
    gates, angles = [], []
    kinds = ("rx", "ry", "rz", "cx")
    for _ in range(length):
        kind = kinds[rng.integers(0, 4)]
        if kind == "cx" and n >= 2:
            control, target = rng.choice(n, size=2, replace=False)
            gates.append(Gate("cx", target=int(target), control=int(control)))
            angles.append(None)
        else:
            kind = kind if kind != "cx" else "ry"
            gates.append(Gate(kind, target=int(rng.integers(0, n))))
            angles.append(float(rng.uniform(-2 * np.pi, 2 * np.pi)))
    return gates, angles


# ---------------------------------------------------------------------------
# zero_state
# ---------------------------------------------------------------------------

def test_zero_state_single_qubit():
    assert np.array_equal(zero_state(1), [1, 0])


def test_zero_state_two_qubits():
    assert np.array_equal(zero_state(2), [1, 0, 0, 0])


def test_zero_state_three_qubits_norm():
    state = zero_state(3)
    assert state.shape == (8,)
    assert np.isclose(np.linalg.norm(state), 1.0)


@pytest.mark.parametrize("n", [0, -1, 13])
def test_zero_state_bounds(n):
    with pytest.raises(ConfigurationError):
        zero_state(n)


# ---------------------------------------------------------------------------
# apply_gate
# ---------------------------------------------------------------------------

def test_rx_pi_on_zero():
    """RX(pi)|0> = -i|1>"""
    state = apply_gate(zero_state(1), Gate("rx", 0), angle=np.pi)
    assert np.allclose(state, [0, -1j], atol=1e-12)


def test_rz_is_diagonal():
    """RZ(phi)|0> = e^{-i phi/2}|0>; probabilities unchanged."""
    phi = 0.731
    state = apply_gate(zero_state(1), Gate("rz", 0), angle=phi)
    assert np.allclose(state, [np.exp(-1j * phi / 2), 0], atol=1e-12)
    assert np.allclose(np.abs(state) ** 2, [1, 0], atol=1e-12)


def test_cx_flips_target_when_control_set():
    """qubit 0 is the most significant bit: |10> is index 2."""
    state = np.array([0, 0, 1, 0], dtype=complex)
    flipped = apply_gate(state, Gate("cx", target=1, control=0))
    assert np.array_equal(flipped, [0, 0, 0, 1])


def test_cx_identity_when_control_clear():
    state = np.array([0, 1, 0, 0], dtype=complex)  # |01>
    assert np.array_equal(apply_gate(state, Gate("cx", target=1, control=0)), state)


def test_apply_gate_does_not_mutate_input():
    state = zero_state(1)
    apply_gate(state, Gate("rx", 0), angle=1.0)
    assert np.array_equal(state, [1, 0])


def test_rotation_requires_angle():
    with pytest.raises(UsageError):
        apply_gate(zero_state(1), Gate("ry", 0))


def test_cx_rejects_angle():
    with pytest.raises(UsageError):
        apply_gate(zero_state(2), Gate("cx", target=1, control=0), angle=0.5)


def test_gate_validation():
    with pytest.raises(ConfigurationError):
        Gate("cx", target=0, control=0)
    with pytest.raises(ConfigurationError):
        Gate("cx", target=0)
    with pytest.raises(ConfigurationError):
        Gate("hadamard", target=0)
    with pytest.raises(ConfigurationError):
        Gate("rx", target=0, control=1)


def test_target_out_of_range():
    with pytest.raises(ConfigurationError):
        apply_gate(zero_state(1), Gate("ry", 1), angle=0.1)


# ---------------------------------------------------------------------------
# run_circuit
# ---------------------------------------------------------------------------

def test_empty_circuit_is_identity():
    assert np.array_equal(run_circuit([], np.array([]), 2), [1, 0, 0, 0])


def test_single_ry_quarter_turn():
    """RY(pi/2)|0> is real: [cos(pi/4), sin(pi/4)]."""
    state = run_circuit([Gate("ry", 0, param_index=0)], np.array([np.pi / 2]), 1)
    assert np.allclose(state, [np.cos(np.pi / 4), np.sin(np.pi / 4)], atol=1e-12)


def test_two_qubit_template_matches_dense_oracle():
    from qic.ansatz import AnsatzConfig, build_ansatz
    config = AnsatzConfig(2, 1)
    gates = build_ansatz(config)
    theta = np.ones(config.param_count)
    expected = dense_circuit_state(gates, theta, 2)
    assert np.max(np.abs(run_circuit(gates, theta, 2) - expected)) < 1e-10


def test_param_index_out_of_range():
    with pytest.raises(ConfigurationError):
        run_circuit([Gate("rx", 0, param_index=3)], np.zeros(2), 1)
    with pytest.raises(ConfigurationError):
        run_circuit([Gate("rx", 0)], np.zeros(2), 1)


# ---------------------------------------------------------------------------
# fidelity
# ---------------------------------------------------------------------------

def test_fidelity_self_is_one():
    state = np.array([0.6, 0.8j], dtype=complex)
    assert np.isclose(fidelity(state, state), 1.0)


def test_fidelity_orthogonal_basis_states():
    assert fidelity(np.array([1, 0, 0, 0], complex),
                    np.array([0, 1, 0, 0], complex)) == 0.0


def test_fidelity_worked_example():
    """|0.6*0.8 + 0.8*0.6|^2 = 0.9216"""
    value = fidelity(np.array([0.6, 0.8], complex), np.array([0.8, 0.6], complex))
    assert np.isclose(value, 0.9216, atol=1e-12)


def test_fidelity_symmetric_and_phase_invariant():
    rng = np.random.default_rng(5)
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    a /= np.linalg.norm(a)
    b = rng.normal(size=4) + 1j * rng.normal(size=4)
    b /= np.linalg.norm(b)
    assert np.isclose(fidelity(a, b), fidelity(b, a), atol=1e-14)
    assert np.isclose(fidelity(a * np.exp(0.4j), b), fidelity(a, b), atol=1e-14)


def test_fidelity_dimension_mismatch():
    with pytest.raises(UsageError):
        fidelity(np.zeros(2, complex), np.zeros(4, complex))


# ---------------------------------------------------------------------------
# invariants over random circuits
# ---------------------------------------------------------------------------

def test_norm_preserved_by_random_gates():
    for n in (1, 2, 4):
        for _ in range(20):
            gates, angles = random_gate_sequence(RNG, n, 12)
            state = zero_state(n)
            for gate, angle in zip(gates, angles):
                state = apply_gate(state, gate, angle)
            assert abs(np.linalg.norm(state) ** 2 - 1.0) < 1e-10


def test_run_circuit_unitarity():
    from qic.ansatz import AnsatzConfig, build_ansatz
    config = AnsatzConfig(3, 2)
    gates = build_ansatz(config)
    theta = RNG.uniform(0, 2 * np.pi, config.param_count)
    state = run_circuit(gates, theta, 3)
    assert np.isclose(fidelity(state, state), 1.0, atol=1e-12)


def test_full_turn_shift_leaves_fidelity_unchanged():
    """phi -> phi + 2*pi flips the global sign only, invisible to |.|^2."""
    from qic.ansatz import AnsatzConfig, build_ansatz
    config = AnsatzConfig(2, 2)
    gates = build_ansatz(config)
    target = RNG.normal(size=4) + 1j * RNG.normal(size=4)
    target /= np.linalg.norm(target)
    theta = RNG.uniform(0, 2 * np.pi, config.param_count)
    base = fidelity(run_circuit(gates, theta, 2), target)
    for j in range(config.param_count):
        shifted = theta.copy()
        shifted[j] += 2 * np.pi
        assert abs(fidelity(run_circuit(gates, shifted, 2), target) - base) < 1e-10


def test_matches_dense_oracle_small_n():
    from qic.ansatz import AnsatzConfig, build_ansatz
    for n in (2, 3):
        config = AnsatzConfig(n, 2)
        gates = build_ansatz(config)
        for _ in range(10):
            theta = RNG.uniform(-2 * np.pi, 2 * np.pi, config.param_count)
            expected = dense_circuit_state(gates, theta, n)
            assert np.max(np.abs(run_circuit(gates, theta, n) - expected)) < 1e-10


def test_num_qubits_rejects_non_power_of_two():
    with pytest.raises(UsageError):
        num_qubits(np.zeros(3, complex))
