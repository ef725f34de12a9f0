"""Gene and circuit-genome types, random generation, circuit statistics, QASM export."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .sim import GateKind

TWO_PI = 2.0 * math.pi

_ROTATION_KINDS = (GateKind.RX, GateKind.RY, GateKind.RZ)
_ALL_KINDS = _ROTATION_KINDS + (GateKind.CNOT,)


@dataclass(frozen=True)
class Gene:
    """One gate application: target qubit, gate kind, optional control, optional angle.

    Rotations carry an angle in [0, 2*pi) and no control; cx carries a control
    distinct from the target and no angle.
    """

    target: int
    kind: GateKind
    control: int | None = None
    angle: float | None = None

    def __post_init__(self):
        if self.target < 0:
            raise ValueError(f"target qubit must be >= 0, got {self.target}")
        if self.kind is GateKind.CNOT:
            if self.control is None:
                raise ValueError("cx gene needs a control qubit")
            if self.control < 0:
                raise ValueError(f"control qubit must be >= 0, got {self.control}")
            if self.control == self.target:
                raise ValueError("cx control and target must differ")
            if self.angle is not None:
                raise ValueError("cx gene takes no angle")
        else:
            if self.control is not None:
                raise ValueError(f"{self.kind.value} gene takes no control")
            if self.angle is None:
                raise ValueError(f"{self.kind.value} gene needs an angle")
            if not 0.0 <= self.angle < TWO_PI:
                raise ValueError(f"angle must lie in [0, 2*pi), got {self.angle}")


@dataclass
class Individual:
    """An ordered gene sequence (a circuit candidate) with a cached fitness.

    The cache is excluded from equality; operations that change genes return
    individuals with the cache cleared.
    """

    genes: list[Gene]
    n_qubits: int
    fitness: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        for g in self.genes:
            if g.target >= self.n_qubits or (g.control is not None and g.control >= self.n_qubits):
                raise ValueError(f"gene {g} does not fit on {self.n_qubits} qubits")


@dataclass(frozen=True)
class CircuitStats:
    total_gates: int
    cnot_count: int
    depth: int


def random_gene(n_qubits: int, rng: np.random.Generator) -> Gene:
    """Draw a uniformly random gene valid for the register size.

    Gate kind is uniform over the allowed kinds (cx excluded on one qubit),
    qubits are uniform, the angle is uniform over [0, 2*pi).
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    kinds = _ALL_KINDS if n_qubits > 1 else _ROTATION_KINDS
    kind = kinds[int(rng.integers(len(kinds)))]
    target = int(rng.integers(n_qubits))
    if kind is GateKind.CNOT:
        control = int(rng.integers(n_qubits - 1))
        if control >= target:
            control += 1
        return Gene(target=target, kind=kind, control=control)
    return Gene(target=target, kind=kind, angle=float(rng.uniform(0.0, TWO_PI)))


def random_individual(n_qubits: int, length: int, rng: np.random.Generator) -> Individual:
    """Individual of exactly `length` random genes."""
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    return Individual([random_gene(n_qubits, rng) for _ in range(length)], n_qubits)


def stats(individual: Individual) -> CircuitStats:
    """Gate totals and circuit depth under greedy as-soon-as-possible layering.

    A gate lands on layer 1 + max(layer of the previous gate on each of its
    qubits); depth is the highest occupied layer.
    """
    last = [0] * individual.n_qubits
    depth = 0
    cnots = 0
    for g in individual.genes:
        qubits = (g.target,) if g.control is None else (g.target, g.control)
        layer = 1 + max(last[q] for q in qubits)
        for q in qubits:
            last[q] = layer
        if layer > depth:
            depth = layer
        if g.kind is GateKind.CNOT:
            cnots += 1
    return CircuitStats(total_gates=len(individual.genes), cnot_count=cnots, depth=depth)


def to_qasm(individual: Individual) -> str:
    """OpenQASM 2.0 text for the circuit; angles keep 17 significant digits."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{individual.n_qubits}];",
    ]
    for g in individual.genes:
        if g.kind is GateKind.CNOT:
            lines.append(f"cx q[{g.control}],q[{g.target}];")
        else:
            lines.append(f"{g.kind.value}({g.angle:.17g}) q[{g.target}];")
    return "\n".join(lines) + "\n"


class QasmImportError(ValueError):
    """Raised for OpenQASM input outside the rx/ry/rz/cx subset."""

    def __init__(self, message: str, gate: str | None = None):
        super().__init__(message)
        self.gate = gate


_QREG_RE = re.compile(r"^qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_ROT_RE = re.compile(r"^(rx|ry|rz)\s*\(\s*([^()]+?)\s*\)\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_CX_RE = re.compile(r"^cx\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]\s*,\s*([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")

_KIND_BY_NAME = {"rx": GateKind.RX, "ry": GateKind.RY, "rz": GateKind.RZ}


def parse_qasm(text: str) -> Individual:
    """Parse the OpenQASM 2.0 subset written by to_qasm back into an Individual.

    Only rx/ry/rz/cx on a single quantum register are accepted; anything else
    raises QasmImportError naming the offending statement. Angles must be
    plain decimal literals and are canonicalized into [0, 2*pi).
    """
    stripped = "\n".join(line.split("//", 1)[0] for line in text.splitlines())
    statements = [s.strip() for s in stripped.replace("\n", " ").split(";")]
    statements = [s for s in statements if s]
    if not statements or not statements[0].upper().startswith("OPENQASM"):
        raise QasmImportError("missing OPENQASM header")
    version = statements[0].split(None, 1)[1].strip() if len(statements[0].split()) > 1 else ""
    if version != "2.0":
        raise QasmImportError(f"unsupported OPENQASM version {version!r}")

    reg_name: str | None = None
    n_qubits = 0
    genes: list[Gene] = []
    for stmt in statements[1:]:
        if stmt.startswith("include"):
            continue
        m = _QREG_RE.match(stmt)
        if m:
            if reg_name is not None:
                raise QasmImportError("multiple qreg declarations are not supported")
            reg_name = m.group(1)
            n_qubits = int(m.group(2))
            if n_qubits < 1:
                raise QasmImportError(f"qreg size must be >= 1, got {n_qubits}")
            continue
        if reg_name is None:
            raise QasmImportError(f"gate before qreg declaration: {stmt!r}")
        m = _ROT_RE.match(stmt)
        if m:
            name, angle_text, reg, qubit = m.group(1), m.group(2), m.group(3), int(m.group(4))
            _check_operand(reg, reg_name, qubit, n_qubits)
            try:
                angle = float(angle_text)
            except ValueError:
                raise QasmImportError(f"unsupported angle expression {angle_text!r}") from None
            genes.append(Gene(target=qubit, kind=_KIND_BY_NAME[name], angle=angle % TWO_PI))
            continue
        m = _CX_RE.match(stmt)
        if m:
            creg, control, treg, target = m.group(1), int(m.group(2)), m.group(3), int(m.group(4))
            _check_operand(creg, reg_name, control, n_qubits)
            _check_operand(treg, reg_name, target, n_qubits)
            genes.append(Gene(target=target, kind=GateKind.CNOT, control=control))
            continue
        token = stmt.split("(")[0].split()[0]
        raise QasmImportError(f"unsupported gate {token!r}", gate=token)
    if reg_name is None:
        raise QasmImportError("missing qreg declaration")
    return Individual(genes, n_qubits)


def _check_operand(reg: str, expected: str, qubit: int, n_qubits: int) -> None:
    if reg != expected:
        raise QasmImportError(f"unknown register {reg!r}")
    if qubit >= n_qubits:
        raise QasmImportError(f"qubit index {qubit} out of range for qreg[{n_qubits}]")
