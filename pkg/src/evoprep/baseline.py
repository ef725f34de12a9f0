"""Exact deterministic state synthesis via uniformly controlled rotations.

The construction walks the recursive amplitude tree of the target: level k
rotates qubit n-1-k, conditioned on the k more-significant qubits, first with
ry gates that set the amplitude magnitudes and then (for complex targets) with
rz gates that set the phases up to a global phase. Each multiplexed rotation
with k controls expands into 2**k plain rotations interleaved with 2**k cx
gates in Gray-code order, so a real non-negative n-qubit target costs exactly
2**n - 2 cx gates and a general complex target at most twice that.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .genome import TWO_PI, Gene, Individual
from .sim import GateKind, StateVector

_REAL_ATOL = 1e-12


def disentangle_angles(amplitudes: Sequence[complex] | np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Per-level rotation angles of the amplitude tree of a unit-norm vector.

    Level k (k = 0..n-1) holds 2**k values. The ry entry for a subtree is
    2*atan2(|lower half|, |upper half|) over the subtree's amplitude norms;
    the rz entry is the mean phase difference between the halves. Empty
    subtrees contribute angle 0.
    """
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    size = amps.size
    n_qubits = size.bit_length() - 1
    if size < 2 or size != (1 << n_qubits):
        raise ValueError(f"need 2**n amplitudes with n >= 1, got {size}")
    norm_sq = float(np.real(np.vdot(amps, amps)))
    if abs(norm_sq - 1.0) > 1e-10:
        raise ValueError(f"squared norm deviates from 1 by {abs(norm_sq - 1.0):.3e}")

    powers = np.abs(amps) ** 2
    phases = np.angle(amps)
    ry_tree: list[np.ndarray] = []
    rz_tree: list[np.ndarray] = []
    for level in range(n_qubits):
        halves = powers.reshape(2 << level, -1).sum(axis=1)
        upper = np.sqrt(halves[0::2])
        lower = np.sqrt(halves[1::2])
        ry_tree.append(2.0 * np.arctan2(lower, upper))
        mean_phase = phases.reshape(2 << level, -1).mean(axis=1)
        rz_tree.append(mean_phase[1::2] - mean_phase[0::2])
    return ry_tree, rz_tree


def exact_synthesize(target: StateVector) -> Individual:
    """Deterministic circuit preparing the target exactly, up to global phase.

    Multiplexer levels whose angles are all zero act as the identity and are
    omitted; for real non-negative targets the whole rz pass is skipped.
    """
    n_qubits = target.n_qubits
    amps = target.amplitudes
    ry_tree, rz_tree = disentangle_angles(amps)

    genes: list[Gene] = []
    for level, angles in enumerate(ry_tree):
        if np.any(angles != 0.0):
            genes.extend(_multiplexed_rotation(GateKind.RY, angles, n_qubits, level))
    real_nonnegative = (
        float(np.max(np.abs(amps.imag), initial=0.0)) <= _REAL_ATOL
        and float(np.min(amps.real, initial=0.0)) >= -_REAL_ATOL
    )
    if not real_nonnegative:
        for level, angles in enumerate(rz_tree):
            if np.any(angles != 0.0):
                genes.extend(_multiplexed_rotation(GateKind.RZ, angles, n_qubits, level))
    return Individual(genes, n_qubits)


def _multiplexed_rotation(kind: GateKind, angles: np.ndarray, n_qubits: int, level: int) -> list[Gene]:
    """Expand the level's uniformly controlled rotation into plain gates.

    The target is qubit n-1-level; the controls are the level more-significant
    qubits. Gray-code ordering lets one cx per step retarget the rotation.
    """
    target = n_qubits - 1 - level
    if level == 0:
        return [_rotation_gene(kind, target, float(angles[0]))]
    controls = list(range(n_qubits - level, n_qubits))
    thetas = _gray_mixed_angles(angles)
    genes: list[Gene] = []
    for i, theta in enumerate(thetas):
        genes.append(_rotation_gene(kind, target, float(theta)))
        genes.append(Gene(target=target, kind=GateKind.CNOT, control=controls[_flip_position(i, level)]))
    return genes


def _rotation_gene(kind: GateKind, target: int, angle: float) -> Gene:
    return Gene(target=target, kind=kind, angle=angle % TWO_PI)


def _gray_mixed_angles(angles: np.ndarray) -> np.ndarray:
    """Map multiplexer angles to the rotation angles of the Gray-code expansion.

    thetas[i] = 2**-k * sum_j (-1)**popcount(j & gray(i)) * angles[j].
    """
    k = int(angles.size).bit_length() - 1
    j = np.arange(1 << k)
    gray = j ^ (j >> 1)
    masked = gray[:, None] & j[None, :]
    parity = np.zeros_like(masked)
    for bit in range(k):
        parity ^= (masked >> bit) & 1
    signs = 1.0 - 2.0 * parity
    return signs @ angles / (1 << k)


def _flip_position(step: int, k: int) -> int:
    """Control-bit index toggled between Gray codes at `step` and `step`+1.

    The final step wraps around and uses the most significant control.
    """
    if step == (1 << k) - 1:
        return k - 1
    nxt = step + 1
    return (nxt & -nxt).bit_length() - 1
