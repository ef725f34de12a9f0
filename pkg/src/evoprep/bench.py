"""Benchmark harness: evolved circuits vs the exact synthesis baseline.

For every (qubit count, repeat) the harness evolves a circuit, synthesizes the
exact baseline for the same target, samples both under the noise model, and
records gate counts plus ideal and noisy classical fidelities. Row seeds are
derived from (seed, family, n, repeat) so rows are independent, reproducible
jobs that may run in parallel worker processes.
"""

from __future__ import annotations

import csv
import json
import math
import time
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .baseline import exact_synthesize
from .evolution import EvolutionConfig, evolve
from .genome import Individual, stats
from .noise import NoiseModel, sample_counts
from .sim import StateVector, fidelity, run_circuit
from .targets import GaussianSpec, gaussian_state, w_state

CSV_COLUMNS = [
    "n",
    "method",
    "total_gates",
    "cnot_count",
    "depth",
    "ideal_fidelity",
    "noisy_classical_fidelity",
    "generations",
    "wall_time",
]

FAMILIES = ("gaussian", "w")


@dataclass
class BenchmarkRow:
    """One benchmarked circuit: identification, size metrics, fidelities."""

    family: str
    n: int
    method: str
    repeat: int
    seed: int
    total_gates: int
    cnot_count: int
    depth: int
    ideal_fidelity: float
    noisy_classical_fidelity: float
    generations: int
    wall_time: float
    converged: bool
    escalations: int
    tvd: float
    shots: int
    counts: dict[int, int]
    error: str | None = None


def classical_fidelity(counts: Mapping[int, int], ideal: Iterable[float]) -> float:
    """Bhattacharyya fidelity (sum_x sqrt(q_x * p_x))**2 between the empirical
    distribution of `counts` and the ideal probabilities."""
    p = np.asarray(ideal, dtype=float)
    if abs(float(p.sum()) - 1.0) > 1e-6:
        raise ValueError(f"ideal probabilities sum to {p.sum():.6g}, expected 1")
    q = _empirical(counts, p.size)
    value = float(np.sum(np.sqrt(q * p)) ** 2)
    return min(max(value, 0.0), 1.0)


def total_variation_distance(counts: Mapping[int, int], ideal: Iterable[float]) -> float:
    """0.5 * sum_x |q_x - p_x| between the empirical and ideal distributions."""
    p = np.asarray(ideal, dtype=float)
    q = _empirical(counts, p.size)
    return 0.5 * float(np.abs(q - p).sum())


def _empirical(counts: Mapping[int, int], dim: int) -> np.ndarray:
    total = sum(counts.values())
    if total <= 0:
        raise ValueError("counts are empty")
    q = np.zeros(dim)
    for index, count in counts.items():
        if not 0 <= index < dim:
            raise ValueError(f"count index {index} outside [0, {dim})")
        q[index] = count
    return q / total


def family_target(family: str, n_qubits: int) -> StateVector:
    if family == "gaussian":
        return gaussian_state(GaussianSpec(n_qubits))
    if family == "w":
        return w_state(n_qubits)
    raise ValueError(f"unknown target family {family!r}; expected one of {FAMILIES}")


def run_benchmark(
    family: str,
    n_values: Iterable[int],
    config: EvolutionConfig,
    noise: NoiseModel,
    shots: int,
    repeats: int,
    workers: int = 1,
) -> list[BenchmarkRow]:
    """Benchmark both methods over all (n, repeat) cells of one target family.

    Evolution failures inside a row are captured as flagged rows rather than
    raised. Rows come back sorted by (n, repeat, method) regardless of worker
    scheduling.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown target family {family!r}; expected one of {FAMILIES}")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    master_seed = config.seed
    if master_seed is None:
        master_seed = int(np.random.SeedSequence().generate_state(1)[0])

    jobs = [
        (family, n, repeat, method, config, noise, shots, master_seed)
        for n in n_values
        for repeat in range(repeats)
        for method in ("ga", "baseline")
    ]
    if workers == 1:
        rows = [_execute_row(job) for job in jobs]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_execute_row, jobs))
    rows.sort(key=lambda r: (r.n, r.repeat, r.method))
    return rows


def _row_seeds(master_seed: int, family: str, n: int, repeat: int) -> tuple[int, int]:
    entropy = [master_seed, FAMILIES.index(family), n, repeat]
    ga_seed, noise_seed = np.random.SeedSequence(entropy).generate_state(2)
    return int(ga_seed), int(noise_seed)


def _execute_row(job) -> BenchmarkRow:
    family, n, repeat, method, config, noise, shots, master_seed = job
    ga_seed, noise_seed = _row_seeds(master_seed, family, n, repeat)
    target = family_target(family, n)
    ideal_probs = np.abs(target.amplitudes) ** 2

    try:
        if method == "ga":
            report = evolve(target, replace(config, seed=ga_seed))
            circuit = report.best
            circuit_stats = report.stats
            ideal_fid = report.best_fitness
            generations = report.generations
            wall = report.wall_time
            converged = report.converged
            escalations = report.escalations
        else:
            start = time.perf_counter()
            circuit = exact_synthesize(target)
            wall = time.perf_counter() - start
            circuit_stats = stats(circuit)
            ideal_fid = fidelity(target, run_circuit(circuit.genes, n))
            generations = 0
            converged = True
            escalations = 0
        # Baseline sampling reuses the ga row's noise stream offset by method.
        counts = sample_counts(
            circuit, noise, shots, np.random.default_rng([noise_seed, 0 if method == "ga" else 1])
        )
        row = BenchmarkRow(
            family=family,
            n=n,
            method=method,
            repeat=repeat,
            seed=ga_seed,
            total_gates=circuit_stats.total_gates,
            cnot_count=circuit_stats.cnot_count,
            depth=circuit_stats.depth,
            ideal_fidelity=ideal_fid,
            noisy_classical_fidelity=classical_fidelity(counts, ideal_probs),
            generations=generations,
            wall_time=wall,
            converged=converged,
            escalations=escalations,
            tvd=total_variation_distance(counts, ideal_probs),
            shots=shots,
            counts=counts,
        )
    except Exception as exc:  # noqa: BLE001 - flagged row, not a harness crash
        row = BenchmarkRow(
            family=family,
            n=n,
            method=method,
            repeat=repeat,
            seed=ga_seed,
            total_gates=0,
            cnot_count=0,
            depth=0,
            ideal_fidelity=math.nan,
            noisy_classical_fidelity=math.nan,
            generations=0,
            wall_time=math.nan,
            converged=False,
            escalations=0,
            tvd=math.nan,
            shots=shots,
            counts={},
            error=f"{type(exc).__name__}: {exc}",
        )
    return row


def aggregate(rows: list[BenchmarkRow]) -> list[dict]:
    """Mean and standard error of every numeric metric per (n, method)."""
    metrics = [
        "total_gates",
        "cnot_count",
        "depth",
        "ideal_fidelity",
        "noisy_classical_fidelity",
        "generations",
        "wall_time",
    ]
    groups: dict[tuple[int, str], list[BenchmarkRow]] = {}
    for row in rows:
        if row.error is None:
            groups.setdefault((row.n, row.method), []).append(row)
    out = []
    for (n, method) in sorted(groups):
        members = groups[(n, method)]
        entry: dict = {"n": n, "method": method, "rows": len(members)}
        for metric in metrics:
            values = np.array([getattr(r, metric) for r in members], dtype=float)
            entry[f"{metric}_mean"] = float(values.mean())
            entry[f"{metric}_stderr"] = (
                float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
            )
        out.append(entry)
    return out


def write_rows_csv(rows: list[BenchmarkRow], path: str | Path) -> None:
    """CSV with exactly the CSV_COLUMNS header; errored rows are skipped."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            if row.error is not None:
                continue
            writer.writerow([getattr(row, column) for column in CSV_COLUMNS])


def write_rows_json(rows: list[BenchmarkRow], path: str | Path) -> None:
    """JSON mirror of the table with the extra per-row fields (no histograms)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "schema": 1,
        "rows": [
            {
                "family": row.family,
                "n": row.n,
                "method": row.method,
                "repeat": row.repeat,
                "seed": row.seed,
                "total_gates": row.total_gates,
                "cnot_count": row.cnot_count,
                "depth": row.depth,
                "ideal_fidelity": row.ideal_fidelity,
                "noisy_classical_fidelity": row.noisy_classical_fidelity,
                "generations": row.generations,
                "wall_time": row.wall_time,
                "converged": row.converged,
                "escalations": row.escalations,
                "tvd": row.tvd,
                "shots": row.shots,
                "error": row.error,
            }
            for row in rows
        ],
    }
    _dump_json(payload, path)


def write_aggregates_json(rows: list[BenchmarkRow], path: str | Path) -> None:
    _dump_json({"schema": 1, "aggregates": aggregate(rows)}, path)


def write_histograms(rows: list[BenchmarkRow], out_dir: str | Path) -> list[Path]:
    """One counts file per row: hist_<family>_n<n>_r<repeat>_<method>.json."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for row in rows:
        if row.error is not None:
            continue
        path = out_dir / f"hist_{row.family}_n{row.n}_r{row.repeat}_{row.method}.json"
        payload = {
            "schema": 1,
            "family": row.family,
            "n_qubits": row.n,
            "method": row.method,
            "repeat": row.repeat,
            "shots": row.shots,
            "counts": {str(k): v for k, v in sorted(row.counts.items())},
        }
        _dump_json(payload, path)
        paths.append(path)
    return paths


def _dump_json(payload: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with Path(path).open("w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
