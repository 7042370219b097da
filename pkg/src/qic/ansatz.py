"""Layered ring-entangler circuit template with three rotations per qubit.

Each layer is an entangling part followed by a rotation part:

* entangling part: ``CX(q, q+1)`` for ``q = 0 .. n-2``, then the ring-closing
  ``CX(n-1, 0)`` - ``n`` CX gates in total;
* rotation part: for every qubit, three rotations whose axes are given by
  ``rotation_sequence`` (default X, Y, Z; repeats such as Z, X, Z are valid).

Parameter slots are laid out layer-major, then qubit, then axis:

    index = layer * 3n + qubit * 3 + axis_position

so a circuit with ``L`` layers uses exactly ``m = 3 * n * L`` parameters. This
layout is part of the on-disk format (see :mod:`qic.codec`) and must not
change. Scheduled greedily, one layer has depth ``n + 3`` (the CX chain cannot
be compressed below ``n`` for a ring), i.e. total depth ``(n + 3) * L``, which
equals ``6L`` in the three-qubit case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import ConfigurationError
from .statevec import Gate

AXES = ("x", "y", "z")
DEFAULT_ROTATION_SEQUENCE = ("x", "y", "z")


@dataclass(frozen=True)
class AnsatzConfig:
    """Shape of the circuit template: qubit count, layers, rotation axes."""

    n: int
    layers: int
    rotation_sequence: tuple[str, str, str] = DEFAULT_ROTATION_SEQUENCE
    m_prime: int = field(default=3, init=False)  # rotations per qubit per layer

    def __post_init__(self):
        if self.n < 2:
            raise ConfigurationError(f"need at least 2 qubits for CX, got n={self.n}")
        if self.layers < 1:
            raise ConfigurationError(f"layer count must be >= 1, got {self.layers}")
        seq = tuple(str(a).lower() for a in self.rotation_sequence)
        if len(seq) != 3 or any(a not in AXES for a in seq):
            raise ConfigurationError(
                f"rotation sequence must be an ordered triple over x/y/z, got "
                f"{self.rotation_sequence!r}")
        object.__setattr__(self, "rotation_sequence", seq)

    @property
    def param_count(self) -> int:
        return self.m_prime * self.n * self.layers


def param_count(config: AnsatzConfig) -> int:
    """Number of trainable angles, ``3 * n * layers``."""
    return config.param_count


def parse_rotation_sequence(text: str) -> tuple[str, str, str]:
    """Parse a three-letter axis string such as ``"xyz"`` or ``"zxz"``."""
    seq = tuple(text.lower())
    if len(seq) != 3 or any(a not in AXES for a in seq):
        raise ConfigurationError(f"rotation sequence must be 3 letters over x/y/z, "
                                 f"got {text!r}")
    return seq


def ansatz_id(config: AnsatzConfig) -> int:
    """One-byte tag for the circuit family, stored in the file header.

    The ring topology is fixed, so the tag only encodes the rotation axes as
    a base-3 number (x=0, y=1, z=2): XYZ -> 5, ZXZ -> 20. Values 0..26.
    """
    a0, a1, a2 = (AXES.index(a) for a in config.rotation_sequence)
    return 9 * a0 + 3 * a1 + a2


def rotation_sequence_from_id(tag: int) -> tuple[str, str, str]:
    """Inverse of :func:`ansatz_id`."""
    if not 0 <= tag <= 26:
        raise ConfigurationError(f"ansatz id must be in 0..26, got {tag}")
    return (AXES[tag // 9], AXES[(tag // 3) % 3], AXES[tag % 3])


@lru_cache(maxsize=None)
def _build_cached(n: int, layers: int, rotation_sequence: tuple[str, str, str]) -> tuple[Gate, ...]:
    gates: list[Gate] = []
    per_layer = 3 * n
    for layer in range(layers):
        for q in range(n - 1):
            gates.append(Gate("cx", target=q + 1, control=q))
        gates.append(Gate("cx", target=0, control=n - 1))
        base = layer * per_layer
        for q in range(n):
            for pos, axis in enumerate(rotation_sequence):
                gates.append(Gate("r" + axis, target=q,
                                  param_index=base + q * 3 + pos))
    return tuple(gates)


def build_ansatz(config: AnsatzConfig) -> tuple[Gate, ...]:
    """Gate list for the configured template; see the module docstring."""
    return _build_cached(config.n, config.layers, config.rotation_sequence)


def circuit_depth(gates: Sequence[Gate], n: int) -> int:
    """Depth under greedy as-soon-as-possible scheduling."""
    level = [0] * n
    for gate in gates:
        qubits = (gate.target,) if gate.control is None else (gate.control, gate.target)
        layer = max(level[q] for q in qubits) + 1
        for q in qubits:
            level[q] = layer
    return max(level, default=0)
