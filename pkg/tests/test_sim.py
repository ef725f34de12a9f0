"""Statevector simulator correctness tests."""

import math

import numpy as np
import pytest

from evoprep import (
    GateKind,
    Gene,
    StateVector,
    apply_gate,
    fidelity,
    probabilities,
    random_individual,
    run_circuit,
    zero_state,
)

import oracles

SQRT_HALF = math.sqrt(0.5)


def test_rx_pi_on_zero_gives_minus_i_one():
    state = run_circuit([Gene(0, GateKind.RX, angle=math.pi)], 1)
    np.testing.assert_allclose(state.amplitudes, [0.0, -1.0j], atol=1e-12)


def test_rz_is_global_phase_on_zero_register():
    theta = 0.7
    state = run_circuit([Gene(1, GateKind.RZ, angle=theta)], 3)
    expected = np.zeros(8, dtype=complex)
    expected[0] = np.exp(-0.5j * theta)
    np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)
    assert fidelity(state, zero_state(3)) == pytest.approx(1.0, abs=1e-12)


def test_cnot_flips_target_when_control_set():
    # |q1 q0> = |10> is index 2; cx(control=1, target=0) sends it to |11>.
    prep = Gene(1, GateKind.RY, angle=math.pi)  # ry(pi)|0> = |1> exactly
    state = run_circuit([prep, Gene(0, GateKind.CNOT, control=1)], 2)
    np.testing.assert_allclose(np.abs(state.amplitudes), [0, 0, 0, 1], atol=1e-12)


def test_cnot_idles_when_control_clear():
    state = run_circuit([Gene(0, GateKind.CNOT, control=1)], 2)
    np.testing.assert_allclose(state.amplitudes, [1, 0, 0, 0], atol=1e-12)


def test_ry_half_pi_matches_kron_oracle():
    gene = Gene(0, GateKind.RY, angle=math.pi / 2)
    state = run_circuit([gene], 1)
    np.testing.assert_allclose(state.amplitudes, [SQRT_HALF, SQRT_HALF], atol=1e-12)
    np.testing.assert_allclose(state.amplitudes, oracles.simulate([gene], 1), atol=1e-12)


def test_empty_circuit_is_zero_state():
    state = run_circuit([], 3)
    expected = np.zeros(8)
    expected[0] = 1
    np.testing.assert_allclose(state.amplitudes, expected)


def test_ry_then_cnot_prepares_bell_pair():
    genes = [Gene(0, GateKind.RY, angle=math.pi / 2), Gene(1, GateKind.CNOT, control=0)]
    state = run_circuit(genes, 2)
    np.testing.assert_allclose(state.amplitudes, [SQRT_HALF, 0, 0, SQRT_HALF], atol=1e-12)
    np.testing.assert_allclose(state.amplitudes, oracles.simulate(genes, 2), atol=1e-12)


def test_random_circuits_match_kron_oracle():
    rng = np.random.default_rng(11)
    for _ in range(60):
        n = int(rng.integers(1, 4))
        ind = random_individual(n, int(rng.integers(0, 21)), rng)
        got = run_circuit(ind.genes, n).amplitudes
        want = oracles.simulate(ind.genes, n)
        np.testing.assert_allclose(got, want, atol=1e-9)


def test_output_norm_is_unity():
    rng = np.random.default_rng(5)
    for _ in range(30):
        n = int(rng.integers(1, 5))
        ind = random_individual(n, 25, rng)
        amps = run_circuit(ind.genes, n).amplitudes
        assert abs(np.linalg.norm(amps) - 1.0) < 1e-10


def test_rotation_inverse_roundtrip():
    # Elementwise inverse needs the literal -theta, which the canonical gene
    # range cannot express, so drive the same kernel apply_gate uses.
    from evoprep import _kernels
    from evoprep.sim import _KIND_CODE

    rng = np.random.default_rng(6)
    for kind in (GateKind.RX, GateKind.RY, GateKind.RZ):
        theta = float(rng.uniform(0.1, 6.0))
        ind = random_individual(3, 10, rng)
        state = run_circuit(ind.genes, 3)
        amps = np.array(state.amplitudes)
        _kernels.apply_rotation(amps, 1, _KIND_CODE[kind], theta)
        _kernels.apply_rotation(amps, 1, _KIND_CODE[kind], -theta)
        np.testing.assert_allclose(amps, state.amplitudes, atol=1e-10)


def test_rotation_wrapped_inverse_is_global_phase():
    # Through genes, theta + (2*pi - theta) = R(2*pi) = -identity.
    rng = np.random.default_rng(16)
    for kind in (GateKind.RX, GateKind.RY, GateKind.RZ):
        theta = float(rng.uniform(0.1, 6.0))
        ind = random_individual(3, 10, rng)
        state = run_circuit(ind.genes, 3)
        forward = apply_gate(state, Gene(1, kind, angle=theta))
        back = apply_gate(forward, Gene(1, kind, angle=(2 * math.pi - theta)))
        np.testing.assert_allclose(back.amplitudes, -state.amplitudes, atol=1e-10)
        assert fidelity(back, state) == pytest.approx(1.0, abs=1e-12)


def test_cnot_self_inverse():
    rng = np.random.default_rng(7)
    ind = random_individual(3, 12, rng)
    state = run_circuit(ind.genes, 3)
    gene = Gene(2, GateKind.CNOT, control=0)
    twice = apply_gate(apply_gate(state, gene), gene)
    np.testing.assert_allclose(twice.amplitudes, state.amplitudes, atol=1e-12)


def test_apply_gate_leaves_input_untouched():
    state = zero_state(2)
    before = state.amplitudes.copy()
    apply_gate(state, Gene(0, GateKind.RX, angle=1.0))
    np.testing.assert_array_equal(state.amplitudes, before)


def test_fidelity_identity_orthogonal_half():
    zero = StateVector([1, 0])
    one = StateVector([0, 1])
    plus = StateVector([SQRT_HALF, SQRT_HALF])
    assert fidelity(zero, zero) == pytest.approx(1.0)
    assert fidelity(zero, one) == pytest.approx(0.0)
    assert fidelity(zero, plus) == pytest.approx(0.5)


def test_fidelity_symmetric_and_phase_invariant():
    rng = np.random.default_rng(8)
    a = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    a /= np.linalg.norm(a)
    b = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    b /= np.linalg.norm(b)
    sa, sb = StateVector(a), StateVector(b)
    assert fidelity(sa, sb) == pytest.approx(fidelity(sb, sa), abs=1e-15)
    for phase in (0.3, 1.9, 5.0):
        rotated = StateVector(np.exp(1j * phase) * a)
        assert abs(fidelity(rotated, sb) - fidelity(sa, sb)) < 1e-12


def test_fidelity_dimension_mismatch():
    with pytest.raises(ValueError):
        fidelity(zero_state(1), zero_state(2))


def test_probabilities_basis_and_superposition():
    np.testing.assert_allclose(probabilities(zero_state(3)), [1, 0, 0, 0, 0, 0, 0, 0])
    w_like = StateVector([0, SQRT_HALF, SQRT_HALF, 0])
    np.testing.assert_allclose(probabilities(w_like), [0, 0.5, 0.5, 0], atol=1e-12)


def test_probabilities_sum_to_one():
    rng = np.random.default_rng(9)
    v = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    v /= np.linalg.norm(v)
    p = probabilities(StateVector(v))
    assert np.all(p >= 0)
    assert p.sum() == pytest.approx(1.0, abs=1e-10)


def test_statevector_validation():
    with pytest.raises(ValueError):
        StateVector([1, 0, 0])  # not a power of two
    with pytest.raises(ValueError):
        StateVector([1.0])  # n_qubits would be 0
    with pytest.raises(ValueError):
        StateVector([1, 1])  # norm off by far more than the tolerance


def test_apply_gate_rejects_out_of_range_qubits():
    state = zero_state(2)
    with pytest.raises(ValueError):
        apply_gate(state, Gene(2, GateKind.RX, angle=1.0))
    with pytest.raises(ValueError):
        apply_gate(state, Gene(0, GateKind.CNOT, control=5))


def test_apply_gate_rejects_equal_control_and_target():
    class FakeGene:
        kind = GateKind.CNOT
        target = 0
        control = 0
        angle = None

    with pytest.raises(ValueError):
        apply_gate(zero_state(2), FakeGene())
