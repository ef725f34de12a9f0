"""Noisy trajectory sampling tests."""

import math

import numpy as np
import pytest

from evoprep import (
    GateKind,
    Gene,
    Individual,
    NoiseModel,
    exact_synthesize,
    probabilities,
    random_individual,
    run_circuit,
    sample_counts,
    total_variation_distance,
    w_state,
)

NOISELESS = NoiseModel(p1=0.0, p2=0.0, readout_flip=0.0)


def _bell_circuit():
    return Individual(
        [Gene(0, GateKind.RY, angle=math.pi / 2), Gene(1, GateKind.CNOT, control=0)], 2
    )


def test_noiseless_deterministic_state():
    # ry(pi) twice prepares |101> = index 5 exactly.
    ind = Individual(
        [Gene(0, GateKind.RY, angle=math.pi), Gene(2, GateKind.RY, angle=math.pi)], 3
    )
    counts = sample_counts(ind, NOISELESS, 1000, np.random.default_rng(0))
    assert counts == {5: 1000}


def test_noiseless_bell_counts_within_binomial_band():
    shots = 16384
    counts = sample_counts(_bell_circuit(), NOISELESS, shots, np.random.default_rng(1))
    assert set(counts) <= {0, 3}
    band = 5 * math.sqrt(shots * 0.25)
    assert abs(counts.get(0, 0) - shots / 2) <= band
    assert abs(counts.get(3, 0) - shots / 2) <= band


def test_half_readout_flip_is_uniform():
    shots = 20000
    noise = NoiseModel(p1=0.0, p2=0.0, readout_flip=0.5)
    counts = sample_counts(Individual([], 1), noise, shots, np.random.default_rng(2))
    band = 5 * math.sqrt(shots * 0.25)
    assert abs(counts.get(0, 0) - shots / 2) <= band
    assert abs(counts.get(1, 0) - shots / 2) <= band


def test_counts_always_sum_to_shots():
    rng = np.random.default_rng(3)
    noise = NoiseModel(p1=0.05, p2=0.1, readout_flip=0.08)
    for _ in range(5):
        ind = random_individual(3, int(rng.integers(1, 25)), rng)
        shots = int(rng.integers(1, 3000))
        counts = sample_counts(ind, noise, shots, rng)
        assert sum(counts.values()) == shots
        assert all(0 <= k < 8 for k in counts)


def test_zero_noise_distribution_converges_to_ideal():
    rng = np.random.default_rng(4)
    shots = 4096
    bound = 5 * math.sqrt(8 / shots)
    for _ in range(5):
        ind = random_individual(3, 15, rng)
        counts = sample_counts(ind, NOISELESS, shots, rng)
        ideal = probabilities(run_circuit(ind.genes, 3))
        assert total_variation_distance(counts, ideal) <= bound


def test_classical_fidelity_nonincreasing_in_p2():
    circuit = exact_synthesize(w_state(3))  # 6 cx gates to corrupt
    ideal = probabilities(run_circuit(circuit.genes, 3))
    from evoprep import classical_fidelity

    means = []
    for p2 in (0.0, 0.05, 0.15, 0.3):
        noise = NoiseModel(p1=0.001, p2=p2, readout_flip=0.0)
        values = [
            classical_fidelity(
                sample_counts(circuit, noise, 2000, np.random.default_rng(100 + s)), ideal
            )
            for s in range(20)
        ]
        means.append(float(np.mean(values)))
    assert all(b <= a + 1e-9 for a, b in zip(means, means[1:])), means


def test_fixed_seed_reproducible():
    ind = _bell_circuit()
    noise = NoiseModel()
    a = sample_counts(ind, noise, 4096, np.random.default_rng(9))
    b = sample_counts(ind, noise, 4096, np.random.default_rng(9))
    assert a == b


def test_empty_circuit_sampling():
    counts = sample_counts(Individual([], 2), NOISELESS, 64, np.random.default_rng(5))
    assert counts == {0: 64}


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel(p1=-0.1)
    with pytest.raises(ValueError):
        NoiseModel(p2=1.5)
    with pytest.raises(ValueError):
        sample_counts(Individual([], 1), NOISELESS, 0)
