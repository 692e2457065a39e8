"""Auditing a depth claim with light cones.

Preparing an entangled state forces the backward light cones of far-apart
qubits to meet somewhere in the circuit, and a cone can grow by at most a
factor of two per CNOT layer (or one graph step, on sparse topologies).
That gives a checkable depth floor: log2(n) - 1 layers on a complete graph,
half the graph diameter on a grid.  The auditor verifies a circuit against
these floors -- and rejects circuits that are too shallow to possibly work.
"""

from dickesynth import (Circuit, ConnectivityGraph, audit_lower_bound,
                        synth_alltoall, synth_grid)

print("=== genuine circuit: |D^16_2> on a complete graph ===")
c, _ = synth_alltoall(16, 2)
print(audit_lower_bound(c, ConnectivityGraph.complete(16)).text())

print("\n=== genuine circuit: |D^16_1> on a 2x8 grid ===")
c, _ = synth_grid(2, 8, 1)
print(audit_lower_bound(c, ConnectivityGraph.grid(2, 8)).text())

print("\n=== bogus claim: 16 lonely Hadamards cannot entangle anything ===")
fake = Circuit(16)
for q in range(16):
    fake.u(q, 1.5707963267948966, 0.0, 3.141592653589793)
print(audit_lower_bound(fake, ConnectivityGraph.complete(16)).text())
