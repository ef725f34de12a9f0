"""JIT-compiled inner loops shared by the simulator, optimizer and noise model.

Amplitude buffers are 1-D complex128 arrays in little-endian basis order.
Compiled circuits are four parallel arrays (code, target, control, angle); the
codes are RX=0, RY=1, RZ=2, CNOT=3, with control=-1 and angle=0.0 on entries
where they do not apply. Everything here is single-threaded and deterministic.
"""

from __future__ import annotations

import numpy as np
from numba import njit

RX, RY, RZ, CNOT = 0, 1, 2, 3


@njit(cache=True)
def apply_rotation(amps, qubit, code, theta):
    half = 0.5 * theta
    c = np.cos(half)
    s = np.sin(half)
    step = 1 << qubit
    n = amps.size
    if code == RZ:
        d0 = complex(c, -s)
        d1 = complex(c, s)
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                amps[i] *= d0
                amps[i + step] *= d1
    elif code == RY:
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                a0 = amps[i]
                a1 = amps[i + step]
                amps[i] = c * a0 - s * a1
                amps[i + step] = s * a0 + c * a1
    else:  # RX
        js = complex(0.0, -s)
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                a0 = amps[i]
                a1 = amps[i + step]
                amps[i] = c * a0 + js * a1
                amps[i + step] = js * a0 + c * a1


@njit(cache=True)
def apply_cnot(amps, control, target):
    cbit = 1 << control
    tbit = 1 << target
    for i in range(amps.size):
        if (i & cbit) and not (i & tbit):
            j = i | tbit
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp


@njit(cache=True)
def apply_pauli(amps, qubit, pauli):
    """pauli: 0=X, 1=Y, 2=Z."""
    step = 1 << qubit
    n = amps.size
    if pauli == 0:
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                tmp = amps[i]
                amps[i] = amps[i + step]
                amps[i + step] = tmp
    elif pauli == 1:
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                tmp = amps[i]
                amps[i] = -1j * amps[i + step]
                amps[i + step] = 1j * tmp
    else:
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                amps[i + step] = -amps[i + step]


@njit(cache=True)
def run_ops(amps, codes, targets, controls, angles):
    for g in range(codes.size):
        if codes[g] == CNOT:
            apply_cnot(amps, controls[g], targets[g])
        else:
            apply_rotation(amps, targets[g], codes[g], angles[g])


@njit(cache=True)
def _overlap(a, b):
    acc = complex(0.0, 0.0)
    for i in range(a.size):
        acc += a[i].conjugate() * b[i]
    return acc


@njit(cache=True)
def _pauli_overlap(chi, phi, qubit, code):
    """<chi| P |phi> for the Pauli axis of rotation code `code` on `qubit`."""
    step = 1 << qubit
    n = chi.size
    acc = complex(0.0, 0.0)
    if code == RX:
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                acc += chi[i].conjugate() * phi[i + step]
                acc += chi[i + step].conjugate() * phi[i]
    elif code == RY:
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                acc += chi[i].conjugate() * (-1j) * phi[i + step]
                acc += chi[i + step].conjugate() * (1j) * phi[i]
    else:
        for base in range(0, n, step << 1):
            for i in range(base, base + step):
                acc += chi[i].conjugate() * phi[i]
                acc -= chi[i + step].conjugate() * phi[i + step]
    return acc


@njit(cache=True)
def value_and_grad(codes, targets, controls, angles, rot_gates, target_amps):
    """Fidelity and its parameter-shift gradient for a compiled circuit.

    For half-angle rotations the shift rule [f(t+pi/2) - f(t-pi/2)] / 2
    reduces algebraically to -Im(o * conj(m)) with o = <t|psi> and
    m = <chi_g| P |phi_g>, where phi_g / chi_g are the forward and backward
    states around gate g. One forward and one backward sweep therefore yield
    the exact shifted-fidelity differences for every angle at once.
    """
    dim = target_amps.size
    n_gates = codes.size
    n_params = rot_gates.size
    phi = np.zeros(dim, np.complex128)
    phi[0] = 1.0
    post = np.empty((n_params, dim), np.complex128)
    slot = 0
    for g in range(n_gates):
        if codes[g] == CNOT:
            apply_cnot(phi, controls[g], targets[g])
        else:
            apply_rotation(phi, targets[g], codes[g], angles[g])
            post[slot] = phi
            slot += 1
    o = _overlap(target_amps, phi)
    value = o.real * o.real + o.imag * o.imag

    grad = np.empty(n_params)
    chi = target_amps.copy()
    slot = n_params - 1
    for g in range(n_gates - 1, -1, -1):
        if codes[g] == CNOT:
            apply_cnot(chi, controls[g], targets[g])
        else:
            m = _pauli_overlap(chi, post[slot], targets[g], codes[g])
            grad[slot] = -(o * m.conjugate()).imag
            apply_rotation(chi, targets[g], codes[g], -angles[g])
            slot -= 1
    return value, grad


@njit(cache=True)
def noisy_outcomes(
    codes,
    targets,
    controls,
    angles,
    site_gate,
    site_qubit,
    flag_rows,
    flag_sites,
    paulis,
    meas_uniform,
    prefixes,
    use_prefix,
    n_qubits,
    outcomes,
):
    """Simulate and measure every shot that has at least one flagged error site.

    flag_rows must be sorted (row-major nonzero order); flagged shots restart
    from the cached prefix state before their first error when available.
    """
    dim = 1 << n_qubits
    n_flags = flag_rows.size
    amps = np.empty(dim, np.complex128)
    f = 0
    while f < n_flags:
        row = flag_rows[f]
        g = f
        while g < n_flags and flag_rows[g] == row:
            g += 1
        first_gate = site_gate[flag_sites[f]]
        if use_prefix:
            amps[:] = prefixes[first_gate + 1]
            start = first_gate + 1
            cursor = f
            # errors attached to the prefix's final gate still apply
            while cursor < g and site_gate[flag_sites[cursor]] == first_gate:
                apply_pauli(amps, site_qubit[flag_sites[cursor]], paulis[cursor])
                cursor += 1
        else:
            amps[:] = 0.0
            amps[0] = 1.0
            start = 0
            cursor = f
        for gate in range(start, codes.size):
            if codes[gate] == CNOT:
                apply_cnot(amps, controls[gate], targets[gate])
            else:
                apply_rotation(amps, targets[gate], codes[gate], angles[gate])
            while cursor < g and site_gate[flag_sites[cursor]] == gate:
                apply_pauli(amps, site_qubit[flag_sites[cursor]], paulis[cursor])
                cursor += 1
        u = meas_uniform[row]
        acc = 0.0
        out = dim - 1
        for i in range(dim):
            p = amps[i].real * amps[i].real + amps[i].imag * amps[i].imag
            acc += p
            if u < acc:
                out = i
                break
        outcomes[row] = out
        f = g
