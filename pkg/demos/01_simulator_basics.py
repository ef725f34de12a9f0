"""Walk through the statevector simulator: gates, fidelity, probabilities.

Run with: python demos/01_simulator_basics.py
"""

import math

import numpy as np

from evoprep import GateKind, Gene, fidelity, probabilities, run_circuit, zero_state

np.set_printoptions(precision=4, suppress=True)

# Basis convention is little endian: index x encodes qubit 0 as its least
# significant bit, so |q1 q0> = |01> sits at index 1.

print("A single ry(pi/2) splits qubit 0 into an equal superposition:")
plus = run_circuit([Gene(0, GateKind.RY, angle=math.pi / 2)], 1)
print("  amplitudes:", plus.amplitudes)

print("\nAdding cx(control=0, target=1) entangles the pair into a Bell state:")
bell = run_circuit(
    [Gene(0, GateKind.RY, angle=math.pi / 2), Gene(1, GateKind.CNOT, control=0)], 2
)
print("  amplitudes:", bell.amplitudes)
print("  probabilities:", probabilities(bell))

print("\nFidelity measures state overlap, ignoring global phase:")
print("  bell vs itself:", fidelity(bell, bell))
print("  bell vs |00>:  ", fidelity(bell, zero_state(2)))

print("\nrz only shifts phases; against |000> the fidelity stays exactly 1:")
phased = run_circuit([Gene(1, GateKind.RZ, angle=0.7)], 3)
print("  first amplitude:", phased.amplitudes[0])
print("  fidelity vs |000>:", fidelity(phased, zero_state(3)))
