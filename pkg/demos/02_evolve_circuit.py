"""Evolve a circuit that prepares a 3-qubit W state to 99% fidelity.

Run with: python demos/02_evolve_circuit.py
"""

from evoprep import EvolutionConfig, evolve, to_qasm, w_state

target = w_state(3)
config = EvolutionConfig(population_size=24, maxiter=15, seed=7)

print("Evolving a 3-qubit W-state circuit (99% fidelity goal)...")
report = evolve(target, config)

print(f"converged:   {report.converged}")
print(f"fidelity:    {report.best_fitness:.6f}")
print(f"generations: {report.generations} (escalations: {report.escalations})")
print(f"circuit:     {report.stats.total_gates} gates, "
      f"{report.stats.cnot_count} cx, depth {report.stats.depth}")

print("\nBest-fitness milestones:")
last = None
for generation, best in report.fitness_trace:
    if best != last:
        print(f"  generation {generation:4d}: {best:.6f}")
        last = best

print("\nOpenQASM circuit:")
print(to_qasm(report.best))
