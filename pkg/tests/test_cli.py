"""Command-line interface tests (invoked in-process through main)."""

import json
import math

import numpy as np
import pytest

from evoprep import GaussianSpec, fidelity, gaussian_state, parse_qasm, run_circuit, w_state
from evoprep.cli import main

FAST_GA = ["--pop", "12", "--maxiter", "8", "--opt-max-evals", "150", "--max-generations", "300"]


def _read_json(path):
    with open(path) as handle:
        return json.load(handle)


def test_synth_w2_writes_qasm_and_report(tmp_path):
    out = tmp_path / "w2"
    rc = main(["synth", "--target", "w", "--qubits", "2", "--seed", "7", *FAST_GA, "--out", str(out)])
    assert rc == 0
    circuit = parse_qasm((tmp_path / "w2.qasm").read_text())
    assert fidelity(w_state(2), run_circuit(circuit.genes, 2)) >= 0.99
    report = _read_json(tmp_path / "w2.json")
    assert report["schema"] == 1
    assert report["result"]["converged"] is True
    assert report["result"]["best_fitness"] >= 0.99


def test_synth_gaussian_single_qubit_defaults(tmp_path):
    out = tmp_path / "g1"
    rc = main(["synth", "--target", "gaussian", "--qubits", "1", "--seed", "3", *FAST_GA, "--out", str(out)])
    assert rc == 0
    report = _read_json(tmp_path / "g1.json")
    assert report["target"]["mu"] == 1.0
    assert report["target"]["sigma"] == 0.25
    expected = gaussian_state(GaussianSpec(1)).amplitudes
    got = np.array([complex(re, im) for re, im in report["target"]["amplitudes"]])
    np.testing.assert_allclose(got, expected, atol=1e-12)


def test_synth_file_target_infers_qubits(tmp_path):
    state_file = tmp_path / "target.txt"
    state_file.write_text("# bell pair\n0.7071067811865476 0 0 0.7071067811865476\n")
    out = tmp_path / "bell"
    rc = main(["synth", "--target", f"file:{state_file}", "--seed", "5", *FAST_GA, "--out", str(out)])
    assert rc == 0
    report = _read_json(tmp_path / "bell.json")
    assert report["target"]["n_qubits"] == 2


def test_synth_nonconvergence_exits_2(tmp_path):
    rc = main([
        "synth", "--target", "w", "--qubits", "3", "--seed", "1",
        "--pop", "8", "--maxiter", "1", "--max-generations", "1", "--initial-length", "1",
        "--out", str(tmp_path / "short"),
    ])
    assert rc == 2
    report = _read_json(tmp_path / "short.json")
    assert report["result"]["converged"] is False


def test_baseline_w3_counts_and_determinism(tmp_path):
    out = tmp_path / "a"
    assert main(["baseline", "--target", "w", "--qubits", "3", "--out", str(out)]) == 0
    first_qasm = (tmp_path / "a.qasm").read_bytes()
    first_report = (tmp_path / "a.json").read_bytes()
    assert first_qasm.decode().count("cx ") == 6  # 2**3 - 2
    assert main(["baseline", "--target", "w", "--qubits", "3", "--out", str(out)]) == 0
    assert (tmp_path / "a.qasm").read_bytes() == first_qasm
    assert (tmp_path / "a.json").read_bytes() == first_report


def test_baseline_gaussian_is_exact(tmp_path):
    out = tmp_path / "g2"
    assert main(["baseline", "--target", "gaussian", "--qubits", "2", "--out", str(out)]) == 0
    circuit = parse_qasm((tmp_path / "g2.qasm").read_text())
    target = gaussian_state(GaussianSpec(2))
    assert fidelity(target, run_circuit(circuit.genes, 2)) >= 1 - 1e-9
    report = _read_json(tmp_path / "g2.json")
    assert report["result"]["fidelity"] >= 1 - 1e-9


def test_sample_noiseless_w3_support(tmp_path):
    qasm = tmp_path / "w3.qasm"
    assert main(["baseline", "--target", "w", "--qubits", "3", "--out", str(qasm)]) == 0
    counts_path = tmp_path / "counts.json"
    rc = main([
        "sample", "--circuit", str(qasm), "--shots", "2048",
        "--p1", "0", "--p2", "0", "--readout", "0", "--seed", "4",
        "--out", str(counts_path),
    ])
    assert rc == 0
    payload = _read_json(counts_path)
    assert set(payload["counts"]) <= {"1", "2", "4"}
    assert sum(payload["counts"].values()) == 2048


def test_sample_default_shot_count(tmp_path):
    qasm = tmp_path / "w2.qasm"
    assert main(["baseline", "--target", "w", "--qubits", "2", "--out", str(qasm)]) == 0
    counts_path = tmp_path / "counts.json"
    assert main(["sample", "--circuit", str(qasm), "--seed", "1", "--out", str(counts_path)]) == 0
    payload = _read_json(counts_path)
    assert payload["shots"] == 16384
    assert sum(payload["counts"].values()) == 16384


def test_sample_fixed_seed_identical_bytes(tmp_path):
    qasm = tmp_path / "w2.qasm"
    assert main(["baseline", "--target", "w", "--qubits", "2", "--out", str(qasm)]) == 0
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        assert main(["sample", "--circuit", str(qasm), "--seed", "9", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sample_rejects_unknown_gate_naming_it(tmp_path, capsys):
    bad = tmp_path / "bad.qasm"
    bad.write_text('OPENQASM 2.0;\nqreg q[1];\nh q[0];\n')
    rc = main(["sample", "--circuit", str(bad), "--out", str(tmp_path / "c.json")])
    assert rc == 1
    assert "'h'" in capsys.readouterr().err


def test_bench_tiny_sweep(tmp_path):
    out_dir = tmp_path / "bench"
    rc = main([
        "bench", "--family", "w", "--min-qubits", "2", "--max-qubits", "3",
        "--repeats", "1", "--shots", "512", "--seed", "11", *FAST_GA,
        "--out", str(out_dir),
    ])
    assert rc == 0
    lines = (out_dir / "benchmark.csv").read_text().splitlines()
    assert lines[0] == "n,method,total_gates,cnot_count,depth,ideal_fidelity,noisy_classical_fidelity,generations,wall_time"
    assert len(lines) == 5  # header + 2 n-values x 2 methods
    payload = _read_json(out_dir / "benchmark.json")
    baseline_rows = [r for r in payload["rows"] if r["method"] == "baseline"]
    assert all(r["ideal_fidelity"] >= 1 - 1e-9 for r in baseline_rows)
    assert (out_dir / "aggregates.json").exists()
    assert len(list(out_dir.glob("hist_*.json"))) == 4


def test_usage_errors_exit_1(tmp_path, capsys):
    assert main(["synth", "--qubits", "2", "--out", str(tmp_path / "x")]) == 1  # missing --target
    assert main(["synth", "--target", "nebula", "--qubits", "2", "--out", str(tmp_path / "x")]) == 1
    assert main(["sample", "--circuit", str(tmp_path / "missing.qasm"), "--out", str(tmp_path / "c.json")]) == 1
    assert main(["bench", "--family", "w", "--min-qubits", "1", "--max-qubits", "1",
                 "--out", str(tmp_path / "d")]) == 1
    capsys.readouterr()


def test_target_qubit_mismatch_rejected(tmp_path):
    state_file = tmp_path / "t.txt"
    state_file.write_text("1 0\n")
    rc = main(["synth", "--target", f"file:{state_file}", "--qubits", "3",
               *FAST_GA, "--out", str(tmp_path / "x")])
    assert rc == 1
