"""Dense statevector simulation over the {rx, ry, rz, cx} gate set.

Basis convention is little endian: basis index x encodes qubit 0 as its
least significant bit. Rotation gates use the half-angle convention
R(theta) = exp(-i * theta * P / 2) for Pauli axis P, which is what makes
the +-pi/2 parameter-shift rule exact in the optimizer.
"""

from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from . import _kernels

if TYPE_CHECKING:
    from .genome import Gene

NORM_ATOL = 1e-10


class GateKind(Enum):
    """Gate types a gene may carry."""

    RX = "rx"
    RY = "ry"
    RZ = "rz"
    CNOT = "cx"

    @property
    def is_rotation(self) -> bool:
        return self is not GateKind.CNOT


_KIND_CODE = {
    GateKind.RX: _kernels.RX,
    GateKind.RY: _kernels.RY,
    GateKind.RZ: _kernels.RZ,
    GateKind.CNOT: _kernels.CNOT,
}


class StateVector:
    """Unit-norm vector of 2**n_qubits complex amplitudes.

    The amplitude buffer is copied on construction and marked read-only, so
    a StateVector never aliases caller-owned memory.
    """

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes: Sequence[complex] | np.ndarray, n_qubits: int | None = None):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if n_qubits is None:
            n_qubits = max(amps.size.bit_length() - 1, 0)
        if n_qubits < 1 or amps.size != (1 << n_qubits):
            raise ValueError(
                f"need 2**n amplitudes with n >= 1, got {amps.size} values for n={n_qubits}"
            )
        norm_sq = float(np.real(np.vdot(amps, amps)))
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(f"squared norm deviates from 1 by {abs(norm_sq - 1.0):.3e}")
        amps.setflags(write=False)
        self.n_qubits = n_qubits
        self.amplitudes = amps

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits})"


def zero_state(n_qubits: int) -> StateVector:
    """All-qubits-zero computational basis state."""
    return StateVector(_zero_amplitudes(n_qubits), n_qubits)


def _zero_amplitudes(n_qubits: int) -> np.ndarray:
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return amps


def _apply_gene(amps: np.ndarray, n_qubits: int, gene: "Gene") -> None:
    target = gene.target
    if not 0 <= target < n_qubits:
        raise ValueError(f"target qubit {target} out of range for {n_qubits} qubits")
    if gene.kind is GateKind.CNOT:
        control = gene.control
        if control is None or not 0 <= control < n_qubits:
            raise ValueError(f"control qubit {control} out of range for {n_qubits} qubits")
        if control == target:
            raise ValueError("cx control and target must differ")
        _kernels.apply_cnot(amps, control, target)
    else:
        _kernels.apply_rotation(amps, target, _KIND_CODE[gene.kind], gene.angle)


def _compile_genes(genes: Sequence["Gene"], n_qubits: int):
    """Genes as the four parallel arrays the jitted kernels consume."""
    n = len(genes)
    codes = np.empty(n, dtype=np.int64)
    targets = np.empty(n, dtype=np.int64)
    controls = np.full(n, -1, dtype=np.int64)
    angles = np.zeros(n, dtype=np.float64)
    for i, gene in enumerate(genes):
        if not 0 <= gene.target < n_qubits:
            raise ValueError(f"target qubit {gene.target} out of range for {n_qubits} qubits")
        codes[i] = _KIND_CODE[gene.kind]
        targets[i] = gene.target
        if gene.kind is GateKind.CNOT:
            if gene.control is None or not 0 <= gene.control < n_qubits:
                raise ValueError(
                    f"control qubit {gene.control} out of range for {n_qubits} qubits"
                )
            if gene.control == gene.target:
                raise ValueError("cx control and target must differ")
            controls[i] = gene.control
        else:
            angles[i] = gene.angle
    return codes, targets, controls, angles


def apply_gate(state: StateVector, gene: "Gene") -> StateVector:
    """Apply one gate to a state, returning a new StateVector.

    The input state is left untouched.
    """
    amps = np.array(state.amplitudes)
    _apply_gene(amps, state.n_qubits, gene)
    return StateVector(amps, state.n_qubits)


def run_circuit(genes: Iterable["Gene"], n_qubits: int) -> StateVector:
    """Fold the gene sequence over |0...0> left to right."""
    codes, targets, controls, angles = _compile_genes(list(genes), n_qubits)
    amps = _zero_amplitudes(n_qubits)
    _kernels.run_ops(amps, codes, targets, controls, angles)
    return StateVector(amps, n_qubits)


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2. Symmetric and invariant under global phase of either state."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    return _overlap_sq(a.amplitudes, b.amplitudes)


def _overlap_sq(a: np.ndarray, b: np.ndarray) -> float:
    f = float(abs(np.vdot(a, b)) ** 2)
    return min(max(f, 0.0), 1.0)


def probabilities(state: StateVector) -> np.ndarray:
    """Measurement probabilities p[x] = |amplitudes[x]|^2 over basis indices."""
    return np.abs(state.amplitudes) ** 2
