"""Stochastic gate-error channel and finite-shot measurement sampling.

Each shot is one trajectory: after every gate, each affected qubit suffers a
uniformly random non-identity Pauli with the per-gate error probability
(p1 for rotations, p2 per qubit of a cx), the final state is measured once in
the computational basis, and readout flips each result bit independently.
Error-free trajectories share the ideal final state and are sampled in bulk;
shots with errors are re-simulated from a cached prefix state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .genome import Individual
from .sim import _compile_genes, _zero_amplitudes

_PREFIX_CACHE_BYTES = 1 << 26


@dataclass
class NoiseModel:
    """Error probabilities: p1 per single-qubit gate, p2 per qubit of a cx,
    readout_flip per measured bit."""

    p1: float = 0.001
    p2: float = 0.01
    readout_flip: float = 0.02

    def __post_init__(self):
        for name in ("p1", "p2", "readout_flip"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def sample_counts(
    individual: Individual,
    noise: NoiseModel,
    shots: int,
    rng: np.random.Generator | None = None,
) -> dict[int, int]:
    """Histogram of `shots` noisy measurement outcomes, basis index -> count.

    Counts always sum to `shots`; indices with zero counts are omitted.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if rng is None:
        rng = np.random.default_rng()

    n_qubits = individual.n_qubits
    dim = 1 << n_qubits
    codes, targets, controls, angles = _compile_genes(individual.genes, n_qubits)

    # One error site per affected qubit per gate, in gate order.
    site_gate: list[int] = []
    site_qubit: list[int] = []
    site_prob: list[float] = []
    for gate_index in range(codes.size):
        if codes[gate_index] == _kernels.CNOT:
            for q in (controls[gate_index], targets[gate_index]):
                site_gate.append(gate_index)
                site_qubit.append(int(q))
                site_prob.append(noise.p2)
        else:
            site_gate.append(gate_index)
            site_qubit.append(int(targets[gate_index]))
            site_prob.append(noise.p1)
    site_gate_arr = np.array(site_gate, dtype=np.int64)
    site_qubit_arr = np.array(site_qubit, dtype=np.int64)
    site_prob_arr = np.array(site_prob, dtype=np.float64)
    n_sites = site_prob_arr.size

    # Fixed draw order keeps fixed-seed runs reproducible: error flags, Pauli
    # choices, measurement uniforms, readout flips.
    if n_sites:
        error_flags = rng.random((shots, n_sites)) < site_prob_arr
    else:
        error_flags = np.zeros((shots, 0), dtype=bool)
    flag_rows, flag_sites = np.nonzero(error_flags)
    flag_rows = flag_rows.astype(np.int64)
    flag_sites = flag_sites.astype(np.int64)
    paulis = rng.integers(0, 3, size=flag_rows.size).astype(np.int64)  # 0=X, 1=Y, 2=Z
    meas_uniform = rng.random(shots)
    if noise.readout_flip > 0.0:
        readout = rng.random((shots, n_qubits)) < noise.readout_flip
        flip_mask = (readout.astype(np.int64) << np.arange(n_qubits)).sum(axis=1)
    else:
        flip_mask = np.zeros(shots, dtype=np.int64)

    prefixes = _prefix_states(codes, targets, controls, angles, n_qubits)
    use_prefix = prefixes is not None
    if prefixes is None:
        ideal = _zero_amplitudes(n_qubits)
        _kernels.run_ops(ideal, codes, targets, controls, angles)
        prefixes = np.empty((0, dim), dtype=np.complex128)
    else:
        ideal = prefixes[-1]

    outcomes = np.empty(shots, dtype=np.int64)
    noisy_shot = np.zeros(shots, dtype=bool)
    noisy_shot[flag_rows] = True
    clean = ~noisy_shot
    if clean.any():
        cdf = np.cumsum(np.abs(ideal) ** 2)
        outcomes[clean] = np.searchsorted(cdf, meas_uniform[clean], side="right")
    if flag_rows.size:
        _kernels.noisy_outcomes(
            codes,
            targets,
            controls,
            angles,
            site_gate_arr,
            site_qubit_arr,
            flag_rows,
            flag_sites,
            paulis,
            meas_uniform,
            prefixes,
            use_prefix,
            n_qubits,
            outcomes,
        )

    np.clip(outcomes, 0, dim - 1, out=outcomes)
    outcomes ^= flip_mask
    counts = np.bincount(outcomes, minlength=dim)
    return {int(i): int(c) for i, c in enumerate(counts) if c}


def _prefix_states(codes, targets, controls, angles, n_qubits: int) -> np.ndarray | None:
    """States after each gate prefix, or None when caching would be too large.

    prefixes[g] is the state after the first g gates; prefixes[-1] is the
    ideal final state.
    """
    dim = 1 << n_qubits
    n_gates = codes.size
    if (n_gates + 1) * dim * 16 > _PREFIX_CACHE_BYTES:
        return None
    prefixes = np.empty((n_gates + 1, dim), dtype=np.complex128)
    amps = _zero_amplitudes(n_qubits)
    prefixes[0] = amps
    for i in range(n_gates):
        _kernels.run_ops(amps, codes[i : i + 1], targets[i : i + 1], controls[i : i + 1], angles[i : i + 1])
        prefixes[i + 1] = amps
    return prefixes
