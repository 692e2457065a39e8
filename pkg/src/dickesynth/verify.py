"""State-vector verification utilities.

Dense little-endian simulator plus analytic reference states, fidelity,
partial trace, and a two-qubit separability test (partial-transpose
criterion, exact in dimension 2x2).
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import Circuit, gate_matrix

__all__ = [
    "SIMULATOR_CAP",
    "simulate",
    "basis_state",
    "dicke_reference",
    "fidelity",
    "partial_trace",
    "two_qubit_separability",
]

SIMULATOR_CAP = 20  # 2^20 amplitudes; keeps exhaustive checks fast


def basis_state(num_qubits: int, bits: str | int) -> np.ndarray:
    """|bits> as a dense vector. A string is read with qubit 0 rightmost
    (little-endian), so basis_state(3, '011') sets qubits 0 and 1."""
    if isinstance(bits, str):
        if len(bits) != num_qubits:
            raise ValueError("bit string length mismatch")
        index = int(bits, 2)
    else:
        index = int(bits)
    v = np.zeros(1 << num_qubits, dtype=complex)
    v[index] = 1.0
    return v


def simulate(c: Circuit, state=None, cap: int = SIMULATOR_CAP) -> np.ndarray:
    """Apply c to a basis string / index / state vector (default |0...0>)."""
    n = c.num_qubits
    if n > cap:
        raise ValueError(f"{n} qubits exceeds simulator cap {cap}")
    if state is None:
        psi = basis_state(n, 0)
    elif isinstance(state, (str, int)):
        psi = basis_state(n, state)
    else:
        psi = np.array(state, dtype=complex)
        if psi.shape != (1 << n,):
            raise ValueError("state vector dimension mismatch")
    # view as an n-axis tensor; axis i (from the right) is qubit i
    psi = psi.reshape((2,) * n)
    for g in c.gates:
        if g.kind == "cx":
            ctrl, targ = g.qubits
            # swap the target axis within the control=1 slice
            sl = [slice(None)] * n
            sl[n - 1 - ctrl] = 1
            sub = psi[tuple(sl)]
            axis = (n - 1 - targ) - (1 if targ < ctrl else 0)
            sub[...] = np.flip(sub, axis=axis).copy()
        else:
            (targ,) = g.qubits
            m = gate_matrix(g)
            psi = np.tensordot(m, psi, axes=([1], [n - 1 - targ]))
            psi = np.moveaxis(psi, 0, n - 1 - targ)
    psi = psi.reshape(1 << n)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-9:
        raise RuntimeError(f"simulation lost normalization: |psi| = {norm}")
    return psi


def dicke_reference(n: int, ell: int) -> np.ndarray:
    """Uniform superposition of all weight-ell n-bit strings."""
    if not 0 <= ell <= n:
        raise ValueError("weight out of range")
    v = np.zeros(1 << n, dtype=complex)
    amp = 1.0 / math.sqrt(math.comb(n, ell))
    for idx in range(1 << n):
        if idx.bit_count() == ell:
            v[idx] = amp
    return v


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    if a.shape != b.shape:
        raise ValueError("dimension mismatch")
    return abs(np.vdot(a, b)) ** 2


def partial_trace(state: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix over the kept qubits (ascending index order:
    the first kept qubit is the least significant row/column bit)."""
    keep = sorted(keep)
    if not keep:
        raise ValueError("keep set is empty")
    n = int(state.shape[0]).bit_length() - 1
    psi = state.reshape((2,) * n)
    # move kept axes (axis n-1-q holds qubit q) to the front, kept[0] last
    axes = [n - 1 - q for q in reversed(keep)]
    rest = [a for a in range(n) if a not in axes]
    psi = np.transpose(psi, axes + rest).reshape(1 << len(keep), -1)
    return psi @ psi.conj().T


def _is_density_matrix(rho: np.ndarray, tol: float = 1e-8) -> bool:
    if rho.shape != (4, 4):
        return False
    if not np.allclose(rho, rho.conj().T, atol=tol):
        return False
    if abs(np.trace(rho).real - 1.0) > tol:
        return False
    return bool(np.linalg.eigvalsh(rho).min() > -tol)


def two_qubit_separability(rho: np.ndarray, tol: float = 1e-9) -> str:
    """Classify a 4x4 density matrix: 'product', 'separable_mixed', or
    'entangled'. Product = equals the tensor product of its marginals;
    entangled = partial transpose has a negative eigenvalue (necessary and
    sufficient for two qubits)."""
    if not _is_density_matrix(rho):
        raise ValueError("not a valid two-qubit density matrix")
    r4 = rho.reshape(2, 2, 2, 2)
    rho_a = np.trace(r4, axis1=0, axis2=2)  # keep low qubit
    rho_b = np.trace(r4, axis1=1, axis2=3)  # keep high qubit
    if np.max(np.abs(rho - np.kron(rho_b, rho_a))) < tol:
        return "product"
    # partial transpose on the low qubit
    pt = np.transpose(r4, (0, 3, 2, 1)).reshape(4, 4)
    if np.linalg.eigvalsh(pt).min() < -tol:
        return "entangled"
    return "separable_mixed"
