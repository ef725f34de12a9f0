"""Evolutionary search over circuit genomes for state preparation.

Each generation doubles the population through midpoint crossover of random
pairs, mutates every individual gene-wise, re-optimizes the angles of every
individual whose genes changed, then roulette-selects survivors with a
one-elite carryover. A run that goes `maxiter` generations without improving
its best fitness escalates: gene count +1 and a fresh population.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .genome import CircuitStats, Individual, random_gene, random_individual, stats
from .optimizer import OptimizerSettings, optimize_angles
from .sim import StateVector, fidelity, run_circuit

_IMPROVEMENT_ATOL = 1e-12


class DegeneratePopulationError(RuntimeError):
    """All-zero total fitness: roulette selection has no wheel to spin."""


@dataclass
class EvolutionConfig:
    """Hyperparameters of the evolutionary run."""

    population_size: int = 100
    mutation_rate: float = 0.05
    fidelity_goal: float = 0.99
    maxiter: int = 1000
    initial_length: int | None = None  # None -> 3 * n_qubits
    max_total_generations: int = 200_000
    seed: int | None = None
    optimizer: OptimizerSettings = field(default_factory=OptimizerSettings)

    def validate(self) -> None:
        if self.population_size < 2 or self.population_size % 2:
            raise ValueError(f"population_size must be even and >= 2, got {self.population_size}")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError(f"mutation_rate must lie in [0, 1], got {self.mutation_rate}")
        if not 0.0 < self.fidelity_goal <= 1.0:
            raise ValueError(f"fidelity_goal must lie in (0, 1], got {self.fidelity_goal}")
        if self.maxiter < 1:
            raise ValueError(f"maxiter must be >= 1, got {self.maxiter}")
        if self.initial_length is not None and self.initial_length < 0:
            raise ValueError(f"initial_length must be >= 0, got {self.initial_length}")
        if self.max_total_generations < 0:
            raise ValueError(f"max_total_generations must be >= 0, got {self.max_total_generations}")
        self.optimizer.validate()


@dataclass
class RunReport:
    """Outcome of one evolutionary run."""

    best: Individual
    best_fitness: float
    generations: int
    escalations: int
    final_length: int
    fitness_trace: list[tuple[int, float]]
    stats: CircuitStats
    wall_time: float
    converged: bool


def crossover(
    p1: Individual, p2: Individual, rng: np.random.Generator | None = None
) -> tuple[Individual, Individual]:
    """Midpoint one-point crossover: each child takes one half from each parent.

    The split point is the fixed midpoint floor(L/2); the rng argument is kept
    for interface symmetry with the other operators.
    """
    if len(p1.genes) != len(p2.genes):
        raise ValueError(f"parents differ in length: {len(p1.genes)} vs {len(p2.genes)}")
    if p1.n_qubits != p2.n_qubits:
        raise ValueError(f"parents differ in qubit count: {p1.n_qubits} vs {p2.n_qubits}")
    k = len(p1.genes) // 2
    child1 = Individual(p1.genes[:k] + p2.genes[k:], p1.n_qubits)
    child2 = Individual(p2.genes[:k] + p1.genes[k:], p1.n_qubits)
    return child1, child2


def mutate(individual: Individual, rate: float, rng: np.random.Generator) -> Individual:
    """Resample each gene independently with probability `rate`.

    Length is preserved; the fitness cache survives only if nothing changed.
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    genes = individual.genes
    draws = rng.random(len(genes))
    changed = False
    new_genes = list(genes)
    for i in range(len(genes)):
        if draws[i] < rate:
            new_genes[i] = random_gene(individual.n_qubits, rng)
            changed = True
    if not changed:
        return Individual(new_genes, individual.n_qubits, fitness=individual.fitness)
    return Individual(new_genes, individual.n_qubits)


def select(
    population: list[Individual],
    fitnesses: list[float] | np.ndarray,
    count: int,
    rng: np.random.Generator,
) -> list[Individual]:
    """Roulette-wheel draw of `count` individuals, i.i.d. with replacement.

    Each individual is drawn with probability fitness / total fitness and
    returned as an independent copy. Raises DegeneratePopulationError when the
    total fitness is zero.
    """
    if len(population) != len(fitnesses):
        raise ValueError(f"{len(population)} individuals but {len(fitnesses)} fitness values")
    weights = np.asarray(fitnesses, dtype=float)
    if np.any(weights < 0.0):
        raise ValueError("fitness values must be >= 0")
    total = float(weights.sum())
    if total <= 0.0:
        raise DegeneratePopulationError("total fitness is zero")
    probs = weights / total
    probs = probs / probs.sum()
    drawn = rng.choice(len(population), size=count, replace=True, p=probs)
    return [_copy_individual(population[i]) for i in drawn]


def _copy_individual(individual: Individual) -> Individual:
    return Individual(list(individual.genes), individual.n_qubits, fitness=individual.fitness)


def evolve(target: StateVector, config: EvolutionConfig) -> RunReport:
    """Run the evolutionary loop until the fidelity goal or the generation cap.

    Returns the best individual ever seen (archived across escalations), its
    fitness trace, and circuit statistics. A run that exhausts
    max_total_generations comes back with converged=False instead of raising.
    """
    config.validate()
    start = time.perf_counter()
    n_qubits = target.n_qubits
    rng = np.random.default_rng(config.seed)
    length = config.initial_length if config.initial_length is not None else 3 * n_qubits

    best_ind: Individual | None = None
    best_fitness = -1.0
    level_best = -1.0  # stalls are judged against the current escalation level
    trace: list[tuple[int, float]] = []
    generation = 0
    escalations = 0
    stall = 0

    def evaluated(ind: Individual) -> Individual:
        if ind.fitness is not None:
            return ind
        ind = optimize_angles(ind, target, config.optimizer)
        if ind.fitness is None:  # no rotation genes to optimize
            ind.fitness = fidelity(target, run_circuit(ind.genes, n_qubits))
        return ind

    def spawn(current_length: int) -> list[Individual]:
        return [
            evaluated(random_individual(n_qubits, current_length, rng))
            for _ in range(config.population_size)
        ]

    def note_best(pool: list[Individual]) -> None:
        nonlocal best_ind, best_fitness, level_best, stall
        top = max(pool, key=lambda ind: ind.fitness)
        if top.fitness > level_best + _IMPROVEMENT_ATOL:
            level_best = top.fitness
            stall = 0
        else:
            stall += 1
        if top.fitness > best_fitness + _IMPROVEMENT_ATOL:
            best_fitness = top.fitness
            best_ind = _copy_individual(top)

    population = spawn(length)
    elite_slot: int | None = None  # index of the carried elite within population
    note_best(population)
    trace.append((0, best_fitness))

    while best_fitness < config.fidelity_goal and generation < config.max_total_generations:
        generation += 1
        if stall >= config.maxiter:
            escalations += 1
            length += 1
            stall = 0
            level_best = -1.0
            population = spawn(length)
            elite_slot = None
            note_best(population)
            trace.append((generation, best_fitness))
            continue

        order = rng.permutation(config.population_size)
        children: list[Individual] = []
        for i in range(0, config.population_size, 2):
            c1, c2 = crossover(population[order[i]], population[order[i + 1]], rng)
            children.append(c1)
            children.append(c2)
        pool = population + children
        # The carried elite skips mutation; that is what makes the per-level
        # best fitness non-decreasing.
        pool = [
            ind if idx == elite_slot else mutate(ind, config.mutation_rate, rng)
            for idx, ind in enumerate(pool)
        ]
        pool = [evaluated(ind) for ind in pool]
        fitnesses = [ind.fitness for ind in pool]
        elite = pool[int(np.argmax(fitnesses))]
        try:
            survivors = select(pool, fitnesses, config.population_size - 1, rng)
        except DegeneratePopulationError:
            # Nothing overlaps the target at all; redraw at the same length.
            population = spawn(length)
            elite_slot = None
            note_best(population)
            trace.append((generation, best_fitness))
            continue
        survivors.append(_copy_individual(elite))
        population = survivors
        elite_slot = config.population_size - 1
        note_best(pool)
        trace.append((generation, best_fitness))

    assert best_ind is not None
    return RunReport(
        best=best_ind,
        best_fitness=best_fitness,
        generations=generation,
        escalations=escalations,
        final_length=length,
        fitness_trace=trace,
        stats=stats(best_ind),
        wall_time=time.perf_counter() - start,
        converged=best_fitness >= config.fidelity_goal,
    )
