"""How circuit depth scales with the number of qubits.

With all-to-all connectivity the Dicke unitary for fixed k compiles to
depth O(log k * log(n/k) + k) -- doubling n adds only a constant number of
layers.  On a path the depth is necessarily linear in n (information moves
one step per layer), and on an n1 x n2 grid the column count n2 sets the
floor.  This demo synthesizes a small sweep and prints depth next to the
matching scaling term so the two can be eyeballed side by side.
"""

import math

from dickesynth import (asap_layering, dicke_unitary_path, synth_alltoall,
                        synth_grid)

K = 4
print(f"all-to-all, k={K}:   depth vs  log2(k)*log2(n/k)+k")
for n in (64, 128, 256, 512, 1024):
    c, _ = synth_alltoall(n, K)
    d = asap_layering(c).depth
    bound = math.log2(K) * math.log2(n / K) + K
    print(f"  n={n:5d}  depth={d:5d}  term={bound:6.1f}  ratio={d / bound:6.1f}")

print(f"\npath, k={K}:         depth vs  n")
for n in (16, 32, 64, 128):
    d = asap_layering(dicke_unitary_path(n, K)).depth
    print(f"  n={n:5d}  depth={d:5d}  ratio={d / n:6.1f}")

print("\ngrid 2 x n2, k=1:    depth vs  n2")
for n2 in (16, 32, 64, 128):
    c, _ = synth_grid(2, n2, 1)
    d = asap_layering(c).depth
    print(f"  n2={n2:4d}  depth={d:5d}  ratio={d / n2:6.1f}")
