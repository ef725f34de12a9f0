"""Exact-synthesis baseline tests."""

import math

import numpy as np
import pytest

from evoprep import (
    GateKind,
    StateVector,
    disentangle_angles,
    exact_synthesize,
    fidelity,
    gaussian_state,
    GaussianSpec,
    run_circuit,
    stats,
    w_state,
    zero_state,
)


def _random_state(rng, n, real_nonnegative=False):
    if real_nonnegative:
        v = np.abs(rng.standard_normal(1 << n)) + 1e-3
    else:
        v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return StateVector(v / np.linalg.norm(v))


def test_zero_target_yields_all_zero_angles_and_empty_circuit():
    ry_tree, rz_tree = disentangle_angles(zero_state(3).amplitudes)
    assert all(np.all(level == 0.0) for level in ry_tree)
    assert all(np.all(level == 0.0) for level in rz_tree)
    circuit = exact_synthesize(zero_state(3))
    assert circuit.genes == []
    assert fidelity(zero_state(3), run_circuit(circuit.genes, 3)) == pytest.approx(1.0)


def test_single_qubit_angle_is_definitional():
    alpha = 1.0
    ry_tree, rz_tree = disentangle_angles([math.cos(alpha / 2), math.sin(alpha / 2)])
    assert ry_tree[0][0] == pytest.approx(alpha, abs=1e-12)
    assert rz_tree[0][0] == 0.0


def test_two_qubit_hamming_one_target_round_trip():
    target = StateVector([0, math.sqrt(0.5), math.sqrt(0.5), 0])
    circuit = exact_synthesize(target)
    assert fidelity(target, run_circuit(circuit.genes, 2)) >= 1 - 1e-10


def test_basis_state_targets():
    for x in range(8):
        amps = np.zeros(8)
        amps[x] = 1.0
        target = StateVector(amps)
        ry_tree, _ = disentangle_angles(target.amplitudes)
        for level in ry_tree:
            assert np.all(np.isin(level, (0.0, math.pi)))
        circuit = exact_synthesize(target)
        assert fidelity(target, run_circuit(circuit.genes, 3)) >= 1 - 1e-10
        if x == 0:
            assert stats(circuit).cnot_count == 0
            assert stats(circuit).total_gates == 0


def test_random_complex_targets_are_exact():
    rng = np.random.default_rng(20)
    for n in range(1, 7):
        for _ in range(5):
            target = _random_state(rng, n)
            circuit = exact_synthesize(target)
            assert fidelity(target, run_circuit(circuit.genes, n)) >= 1 - 1e-9


def test_cnot_counts_real_targets():
    rng = np.random.default_rng(21)
    for n in range(2, 7):
        target = _random_state(rng, n, real_nonnegative=True)
        counted = stats(exact_synthesize(target))
        assert counted.cnot_count == (1 << n) - 2
        assert counted.cnot_count <= (1 << (n + 1)) - 2 * n
        assert counted.total_gates == (1 << (n + 1)) - 3


def test_cnot_counts_complex_targets_bounded():
    rng = np.random.default_rng(22)
    for n in range(2, 6):
        target = _random_state(rng, n)
        assert stats(exact_synthesize(target)).cnot_count <= (1 << (n + 1)) - 4


def test_benchmark_family_counts_and_exactness():
    for n in range(2, 7):
        for target in (gaussian_state(GaussianSpec(n)), w_state(n)):
            circuit = exact_synthesize(target)
            assert fidelity(target, run_circuit(circuit.genes, n)) >= 1 - 1e-9
            assert stats(circuit).cnot_count == (1 << n) - 2


def test_synthesis_is_deterministic():
    target = gaussian_state(GaussianSpec(4))
    assert exact_synthesize(target) == exact_synthesize(target)


def test_circuit_uses_only_supported_gates():
    rng = np.random.default_rng(23)
    circuit = exact_synthesize(_random_state(rng, 4))
    assert all(g.kind in GateKind for g in circuit.genes)


def test_disentangle_rejects_bad_input():
    with pytest.raises(ValueError):
        disentangle_angles([0.5, 0.5, 0.5])  # not a power of two
    with pytest.raises(ValueError):
        disentangle_angles([1.0, 1.0])  # not unit norm
