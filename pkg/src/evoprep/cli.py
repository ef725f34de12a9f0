"""Command-line frontend: synth, baseline, sample, bench.

Exit codes: 0 success (synth additionally requires convergence), 1 usage or
input error, 2 synth finished without reaching the fidelity goal.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench as bench_mod
from .baseline import exact_synthesize
from .evolution import EvolutionConfig, RunReport, evolve
from .genome import Individual, QasmImportError, parse_qasm, stats, to_qasm
from .noise import NoiseModel, sample_counts
from .optimizer import OptimizerSettings
from .sim import StateVector, fidelity, run_circuit
from .targets import GaussianSpec, gaussian_state, parse_state, w_state


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


class CommandError(Exception):
    """Input or runtime failure that should exit with status 1."""


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evoprep", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    synth = sub.add_parser("synth", help="evolve a circuit for a target state")
    _add_target_flags(synth)
    _add_evolution_flags(synth)
    synth.add_argument("--out", required=True, help="output stem or .qasm path; a .json report is written next to it")
    synth.add_argument("--workers", type=int, default=1, help="worker processes; synth itself runs single-process")

    base = sub.add_parser("baseline", help="exact deterministic synthesis for a target state")
    _add_target_flags(base)
    base.add_argument("--out", required=True, help="output stem or .qasm path; a .json report is written next to it")
    base.add_argument("--workers", type=int, default=1, help="accepted for symmetry; baseline is single-process")

    sample = sub.add_parser("sample", help="noisy shot sampling of a circuit file")
    sample.add_argument("--circuit", required=True, help="OpenQASM 2.0 file restricted to rx/ry/rz/cx")
    sample.add_argument("--shots", type=int, default=16384)
    _add_noise_flags(sample)
    sample.add_argument("--seed", type=int, default=None)
    sample.add_argument("--out", required=True, help="counts JSON path")
    sample.add_argument("--workers", type=int, default=1, help="accepted for symmetry; sampling is single-process")

    bench = sub.add_parser("bench", help="benchmark evolved circuits against the baseline")
    bench.add_argument("--family", required=True, choices=list(bench_mod.FAMILIES))
    bench.add_argument("--min-qubits", type=int, default=2)
    bench.add_argument("--max-qubits", type=int, default=6)
    bench.add_argument("--repeats", type=int, default=3)
    bench.add_argument("--shots", type=int, default=16384)
    _add_noise_flags(bench)
    _add_evolution_flags(bench)
    bench.add_argument("--workers", type=int, default=1, help="parallel row jobs; 1 is fully sequential")
    bench.add_argument("--out", required=True, help="output directory for CSV, JSON and histograms")
    return parser


def _add_target_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--target",
        required=True,
        help="'gaussian', 'w', or 'file:PATH' with whitespace-separated amplitudes",
    )
    parser.add_argument("--qubits", type=int, default=None, help="register size; inferred for file targets")
    parser.add_argument("--mu", type=float, default=None, help="gaussian mean override (basis-index units)")
    parser.add_argument("--sigma", type=float, default=None, help="gaussian standard deviation override")


def _add_evolution_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fidelity", type=float, default=0.99)
    parser.add_argument("--pop", type=int, default=100)
    parser.add_argument("--mutation", type=float, default=0.05)
    parser.add_argument("--maxiter", type=int, default=1000, help="stall generations before gene-count escalation")
    parser.add_argument("--initial-length", type=int, default=None, help="starting gene count (default 3 * qubits)")
    parser.add_argument("--max-generations", type=int, default=200_000)
    parser.add_argument("--opt-max-evals", type=int, default=300)
    parser.add_argument("--seed", type=int, default=None)


def _add_noise_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p1", type=float, default=0.001, help="error probability per single-qubit gate")
    parser.add_argument("--p2", type=float, default=0.01, help="error probability per qubit of a cx")
    parser.add_argument("--readout", type=float, default=0.02, help="per-bit readout flip probability")


def _resolve_target(args) -> tuple[StateVector, dict]:
    spec = args.target
    if spec == "gaussian":
        if args.qubits is None:
            raise CommandError("--qubits is required for --target gaussian")
        gspec = GaussianSpec(args.qubits, mu=args.mu, sigma=args.sigma)
        return gaussian_state(gspec), {
            "family": "gaussian",
            "n_qubits": gspec.n_qubits,
            "mu": gspec.mu,
            "sigma": gspec.sigma,
        }
    if spec == "w":
        if args.qubits is None:
            raise CommandError("--qubits is required for --target w")
        return w_state(args.qubits), {"family": "w", "n_qubits": args.qubits}
    if spec.startswith("file:"):
        path = Path(spec[len("file:"):])
        try:
            state = parse_state(path.read_text())
        except OSError as exc:
            raise CommandError(f"cannot read target file: {exc}") from exc
        except ValueError as exc:
            raise CommandError(f"bad target file {path}: {exc}") from exc
        if args.qubits is not None and args.qubits != state.n_qubits:
            raise CommandError(
                f"--qubits {args.qubits} does not match the {state.n_qubits}-qubit target file"
            )
        return state, {"family": "file", "source": str(path), "n_qubits": state.n_qubits}
    raise CommandError(f"unknown target {spec!r}; use 'gaussian', 'w' or 'file:PATH'")


def _evolution_config(args) -> EvolutionConfig:
    return EvolutionConfig(
        population_size=args.pop,
        mutation_rate=args.mutation,
        fidelity_goal=args.fidelity,
        maxiter=args.maxiter,
        initial_length=args.initial_length,
        max_total_generations=args.max_generations,
        seed=args.seed,
        optimizer=OptimizerSettings(max_evals=args.opt_max_evals),
    )


def _out_paths(out: str) -> tuple[Path, Path]:
    path = Path(out)
    if path.suffix == ".qasm":
        return path, path.with_suffix(".json")
    return path.with_name(path.name + ".qasm"), path.with_name(path.name + ".json")


def _amplitude_pairs(state: StateVector) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


def _write_json(payload: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _write_text(text: str, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _cmd_synth(args) -> int:
    target, target_info = _resolve_target(args)
    config = _evolution_config(args)
    try:
        config.validate()
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    report = evolve(target, config)
    qasm_path, report_path = _out_paths(args.out)
    _write_text(to_qasm(report.best), qasm_path)
    _write_json(_synth_report(report, target, target_info, config, qasm_path), report_path)
    status = "converged" if report.converged else "did not converge"
    print(
        f"synth {status}: fidelity {report.best_fitness:.6f} with "
        f"{report.stats.total_gates} gates ({report.stats.cnot_count} cx, depth {report.stats.depth}) "
        f"after {report.generations} generations -> {qasm_path}"
    )
    return 0 if report.converged else 2


def _synth_report(report: RunReport, target: StateVector, target_info: dict,
                  config: EvolutionConfig, qasm_path: Path) -> dict:
    return {
        "schema": 1,
        "kind": "synth-report",
        "target": {**target_info, "amplitudes": _amplitude_pairs(target)},
        "config": {
            "population_size": config.population_size,
            "mutation_rate": config.mutation_rate,
            "fidelity_goal": config.fidelity_goal,
            "maxiter": config.maxiter,
            "initial_length": config.initial_length,
            "max_total_generations": config.max_total_generations,
            "seed": config.seed,
            "optimizer_max_evals": config.optimizer.max_evals,
        },
        "result": {
            "converged": report.converged,
            "best_fitness": report.best_fitness,
            "generations": report.generations,
            "escalations": report.escalations,
            "final_length": report.final_length,
            "stats": {
                "total_gates": report.stats.total_gates,
                "cnot_count": report.stats.cnot_count,
                "depth": report.stats.depth,
            },
            "wall_time": report.wall_time,
            "fitness_trace": [[g, f] for g, f in report.fitness_trace],
        },
        "circuit_file": qasm_path.name,
    }


def _cmd_baseline(args) -> int:
    target, target_info = _resolve_target(args)
    circuit = exact_synthesize(target)
    circuit_stats = stats(circuit)
    achieved = fidelity(target, run_circuit(circuit.genes, circuit.n_qubits))
    qasm_path, report_path = _out_paths(args.out)
    _write_text(to_qasm(circuit), qasm_path)
    payload = {
        "schema": 1,
        "kind": "baseline-report",
        "target": {**target_info, "amplitudes": _amplitude_pairs(target)},
        "result": {
            "fidelity": achieved,
            "stats": {
                "total_gates": circuit_stats.total_gates,
                "cnot_count": circuit_stats.cnot_count,
                "depth": circuit_stats.depth,
            },
        },
        "circuit_file": qasm_path.name,
    }
    _write_json(payload, report_path)
    print(
        f"baseline: fidelity {achieved:.9f} with {circuit_stats.total_gates} gates "
        f"({circuit_stats.cnot_count} cx, depth {circuit_stats.depth}) -> {qasm_path}"
    )
    return 0


def _cmd_sample(args) -> int:
    try:
        text = Path(args.circuit).read_text()
    except OSError as exc:
        raise CommandError(f"cannot read circuit: {exc}") from exc
    try:
        circuit = parse_qasm(text)
    except QasmImportError as exc:
        raise CommandError(f"bad circuit {args.circuit}: {exc}") from exc
    noise = _noise_model(args)
    if args.shots < 1:
        raise CommandError(f"--shots must be >= 1, got {args.shots}")
    counts = sample_counts(circuit, noise, args.shots, np.random.default_rng(args.seed))
    payload = {
        "schema": 1,
        "kind": "counts",
        "circuit_file": str(args.circuit),
        "n_qubits": circuit.n_qubits,
        "shots": args.shots,
        "noise": {"p1": noise.p1, "p2": noise.p2, "readout_flip": noise.readout_flip},
        "seed": args.seed,
        "counts": {str(k): v for k, v in sorted(counts.items())},
    }
    _write_json(payload, Path(args.out))
    print(f"sample: {args.shots} shots over {len(counts)} outcomes -> {args.out}")
    return 0


def _noise_model(args) -> NoiseModel:
    try:
        return NoiseModel(p1=args.p1, p2=args.p2, readout_flip=args.readout)
    except ValueError as exc:
        raise CommandError(str(exc)) from exc


def _cmd_bench(args) -> int:
    if args.min_qubits > args.max_qubits:
        raise CommandError("--min-qubits must be <= --max-qubits")
    if args.family == "w" and args.min_qubits < 2:
        raise CommandError("w states need at least 2 qubits")
    config = _evolution_config(args)
    try:
        config.validate()
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    noise = _noise_model(args)
    rows = bench_mod.run_benchmark(
        args.family,
        range(args.min_qubits, args.max_qubits + 1),
        config,
        noise,
        shots=args.shots,
        repeats=args.repeats,
        workers=args.workers,
    )
    out_dir = Path(args.out)
    bench_mod.write_rows_csv(rows, out_dir / "benchmark.csv")
    bench_mod.write_rows_json(rows, out_dir / "benchmark.json")
    bench_mod.write_aggregates_json(rows, out_dir / "aggregates.json")
    bench_mod.write_histograms(rows, out_dir)
    failed = [row for row in rows if row.error is not None]
    for row in failed:
        print(f"row failed: {row.family} n={row.n} r={row.repeat} {row.method}: {row.error}", file=sys.stderr)
    print(f"bench: {len(rows) - len(failed)}/{len(rows)} rows -> {out_dir}")
    return 1 if len(failed) == len(rows) else 0


_COMMANDS = {
    "synth": _cmd_synth,
    "baseline": _cmd_baseline,
    "sample": _cmd_sample,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"evoprep: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if getattr(args, "workers", 1) < 1:
        print("evoprep: error: --workers must be >= 1", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (CommandError, ValueError) as exc:
        print(f"evoprep: error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
