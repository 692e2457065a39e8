"""Beyond Dicke states: arbitrary symmetric superpositions.

The same machinery that prepares |D^n_k> actually implements the full
Dicke-state *unitary*, which maps the unary encoding of every weight
ell <= k to |D^n_ell> simultaneously.  Composing it with a k-qubit
amplitude loader prepares any permutation-symmetric state supported on the
low Hamming weights: sum_ell alpha_ell |D^n_ell>.
"""

import numpy as np

from dickesynth import dicke_reference, fidelity, prepare_symmetric, simulate

n, k = 8, 3
rng = np.random.default_rng(2026)
alpha = rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1)
alpha /= np.linalg.norm(alpha)

print("target amplitudes alpha_ell:")
for ell, a in enumerate(alpha):
    print(f"  ell={ell}:  {a.real:+.4f}{a.imag:+.4f}j")

circuit = prepare_symmetric("complete", n, k, alpha)
state = simulate(circuit, 0)
target = sum(a * dicke_reference(n, ell) for ell, a in enumerate(alpha))
print(f"\nfidelity with sum_ell alpha_ell |D^{n}_ell>: "
      f"{fidelity(state, target):.12f}")

# the output is permutation symmetric: within each weight class all
# amplitudes coincide
for ell in range(k + 1):
    cls = [state[i] for i in range(1 << n) if bin(i).count("1") == ell]
    print(f"weight {ell}: {len(cls)} basis states, "
          f"amplitude spread {np.ptp(np.abs(cls)):.2e}")
