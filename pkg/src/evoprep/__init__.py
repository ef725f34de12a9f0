"""evoprep: evolutionary synthesis of low-depth state-preparation circuits.

The package evolves circuits over the {rx, ry, rz, cx} gate set that prepare a
given target statevector, compares them against an exact uniformly-controlled-
rotation synthesis baseline, and benchmarks both under a stochastic Pauli
gate-error model with finite-shot sampling.
"""

from .baseline import disentangle_angles, exact_synthesize
from .bench import (
    BenchmarkRow,
    CSV_COLUMNS,
    aggregate,
    classical_fidelity,
    run_benchmark,
    total_variation_distance,
)
from .evolution import (
    DegeneratePopulationError,
    EvolutionConfig,
    RunReport,
    crossover,
    evolve,
    mutate,
    select,
)
from .genome import (
    CircuitStats,
    Gene,
    Individual,
    QasmImportError,
    parse_qasm,
    random_gene,
    random_individual,
    stats,
    to_qasm,
)
from .noise import NoiseModel, sample_counts
from .optimizer import OptimizerSettings, fitness_gradient, optimize_angles
from .sim import (
    GateKind,
    StateVector,
    apply_gate,
    fidelity,
    probabilities,
    run_circuit,
    zero_state,
)
from .targets import GaussianSpec, gaussian_state, parse_state, w_state

__version__ = "0.1.0"

__all__ = [
    "BenchmarkRow",
    "CSV_COLUMNS",
    "CircuitStats",
    "DegeneratePopulationError",
    "EvolutionConfig",
    "GateKind",
    "GaussianSpec",
    "Gene",
    "Individual",
    "NoiseModel",
    "OptimizerSettings",
    "QasmImportError",
    "RunReport",
    "StateVector",
    "aggregate",
    "apply_gate",
    "classical_fidelity",
    "crossover",
    "disentangle_angles",
    "evolve",
    "exact_synthesize",
    "fidelity",
    "fitness_gradient",
    "gaussian_state",
    "mutate",
    "optimize_angles",
    "parse_qasm",
    "parse_state",
    "probabilities",
    "random_gene",
    "random_individual",
    "run_benchmark",
    "run_circuit",
    "sample_counts",
    "select",
    "stats",
    "to_qasm",
    "total_variation_distance",
    "w_state",
    "zero_state",
]
