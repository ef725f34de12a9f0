"""Benchmark target states and ingestion of arbitrary target vectors."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .sim import StateVector


@dataclass
class GaussianSpec:
    """Discretized Gaussian over basis indices; defaults center it on the register.

    mu defaults to 2**n / 2 and sigma to 2**n / 8, in basis-index units.
    """

    n_qubits: int
    mu: float | None = None
    sigma: float | None = None

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        dim = 1 << self.n_qubits
        if self.mu is None:
            self.mu = dim / 2
        if self.sigma is None:
            self.sigma = dim / 8
        if self.sigma <= 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")


def gaussian_state(spec: GaussianSpec) -> StateVector:
    """State with amplitudes proportional to the Gaussian density at each index.

    The density values are used as unnormalized weights and the vector is
    renormalized, so all amplitudes are real and non-negative.
    """
    x = np.arange(1 << spec.n_qubits, dtype=float)
    weights = np.exp(-0.5 * ((x - spec.mu) / spec.sigma) ** 2) / (spec.sigma * math.sqrt(2.0 * math.pi))
    norm = np.linalg.norm(weights)
    if norm == 0.0:
        raise ValueError("gaussian weights underflowed to zero; widen sigma")
    return StateVector(weights / norm, spec.n_qubits)


def w_state(n_qubits: int) -> StateVector:
    """Equal superposition of all Hamming-weight-1 basis states."""
    if n_qubits < 2:
        raise ValueError(f"w state needs n_qubits >= 2, got {n_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[1 << np.arange(n_qubits)] = 1.0 / math.sqrt(n_qubits)
    return StateVector(amps, n_qubits)


def parse_state(text: str) -> StateVector:
    """Parse a whitespace-separated amplitude list into a normalized state.

    Each token is a decimal literal `a` or a complex `a+bi` / `a-bi`. Lines
    whose first non-blank character is '#' are comments. The amplitude count
    must be a power of two >= 2. Input with norm off by more than 1e-6 is
    renormalized with a warning.
    """
    tokens: list[str] = []
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        tokens.extend(line.split())
    if not tokens:
        raise ValueError("no amplitudes found")
    values = np.array([_parse_amplitude(tok) for tok in tokens], dtype=np.complex128)
    size = values.size
    if size < 2 or size & (size - 1):
        raise ValueError(f"amplitude count must be a power of two >= 2, got {size}")
    norm = float(np.linalg.norm(values))
    if norm == 0.0:
        raise ValueError("zero vector cannot be normalized into a state")
    if abs(norm - 1.0) > 1e-6:
        warnings.warn(f"input norm {norm:.6g} deviates from 1; renormalizing", stacklevel=2)
    return StateVector(values / norm)


def _parse_amplitude(token: str) -> complex:
    try:
        return complex(token.replace("i", "j"))
    except ValueError:
        raise ValueError(f"malformed amplitude {token!r}") from None
