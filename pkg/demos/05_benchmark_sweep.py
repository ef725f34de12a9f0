"""Small benchmark sweep: evolved circuits vs exact synthesis under noise.

Writes CSV/JSON into demo_out/. Run with: python demos/05_benchmark_sweep.py
(takes a minute or two).
"""

from pathlib import Path

from evoprep import EvolutionConfig, NoiseModel, OptimizerSettings, aggregate, run_benchmark
from evoprep.bench import write_aggregates_json, write_histograms, write_rows_csv, write_rows_json

config = EvolutionConfig(
    population_size=24,
    maxiter=15,
    seed=42,
    max_total_generations=1500,
    optimizer=OptimizerSettings(max_evals=300),
)
noise = NoiseModel()  # p1=0.001, p2=0.01, readout_flip=0.02

rows = run_benchmark("w", range(2, 5), config, noise, shots=16384, repeats=2)

out = Path("demo_out")
write_rows_csv(rows, out / "benchmark.csv")
write_rows_json(rows, out / "benchmark.json")
write_aggregates_json(rows, out / "aggregates.json")
write_histograms(rows, out)

print(f"{'n':>2} {'method':>9} {'gates':>6} {'cx':>4} {'ideal':>8} {'noisy':>8}")
for entry in aggregate(rows):
    print(
        f"{entry['n']:>2} {entry['method']:>9} {entry['total_gates_mean']:>6.1f} "
        f"{entry['cnot_count_mean']:>4.1f} {entry['ideal_fidelity_mean']:>8.4f} "
        f"{entry['noisy_classical_fidelity_mean']:>8.4f}"
    )

print(f"\nfull tables in {out}/")
