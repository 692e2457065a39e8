"""Gate-level intermediate representation.

Circuits are flat ordered lists of gates over integer qubit indices
(little-endian: qubit 0 is the least significant bit of a basis index).
Single-qubit gates are kept symbolic as (theta, phi, lam, gamma) parameter
quadruples with matrix

    e^{i gamma} * [[cos(theta/2),              -e^{i lam} sin(theta/2)],
                   [e^{i phi} sin(theta/2),  e^{i(phi+lam)} cos(theta/2)]]

so that inverses are exact at the parameter level; matrices are only
materialized by the verifier.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Gate",
    "Circuit",
    "ConnectivityGraph",
    "DepthReport",
    "u_gate",
    "cx_gate",
    "x_gate",
    "ry_gate",
    "phase_gate",
    "gate_matrix",
    "asap_layering",
    "validate_connectivity",
    "compose",
    "inverse",
    "remap_qubits",
    "dumps",
    "loads",
]


@dataclass(frozen=True)
class Gate:
    """One gate: kind 'u' (single-qubit) or 'cx' (CNOT).

    For 'u', qubits = (target,) and params = (theta, phi, lam, gamma).
    For 'cx', qubits = (control, target) and params = ().
    """

    kind: str
    qubits: tuple
    params: tuple = ()

    def __post_init__(self):
        if self.kind == "cx":
            c, t = self.qubits
            if c == t:
                raise ValueError("cnot control equals target")
        elif self.kind != "u":
            raise ValueError(f"unknown gate kind {self.kind!r}")


def u_gate(target: int, theta: float, phi: float = 0.0,
           lam: float = 0.0, gamma: float = 0.0) -> Gate:
    return Gate("u", (target,), (float(theta), float(phi), float(lam), float(gamma)))


def cx_gate(control: int, target: int) -> Gate:
    return Gate("cx", (control, target))


def x_gate(target: int) -> Gate:
    # X = e^{i pi/2} Ry(pi) Rz(pi) up to parameterization; as a u-quadruple:
    return u_gate(target, math.pi, 0.0, math.pi, 0.0)


def ry_gate(target: int, theta: float) -> Gate:
    return u_gate(target, theta, 0.0, 0.0, 0.0)


def phase_gate(target: int, delta: float) -> Gate:
    # diag(1, e^{i delta})
    return u_gate(target, 0.0, 0.0, delta, 0.0)


def gate_matrix(g: Gate) -> np.ndarray:
    """2x2 matrix of a single-qubit gate."""
    theta, phi, lam, gamma = g.params
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    m = np.array(
        [[c, -cmath.exp(1j * lam) * s],
         [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c]],
        dtype=complex,
    )
    return cmath.exp(1j * gamma) * m


def _inverse_gate(g: Gate) -> Gate:
    if g.kind == "cx":
        return g
    theta, phi, lam, gamma = g.params
    # U(theta,phi,lam,gamma)^dagger = U(-theta, -lam, -phi, -gamma)
    return Gate("u", g.qubits, (-theta, -lam, -phi, -gamma))


@dataclass
class Circuit:
    """Ordered gate list over num_qubits qubits, with a declared register split."""

    num_qubits: int
    gates: list = field(default_factory=list)
    data_qubits: frozenset = frozenset()
    ancilla_qubits: frozenset = frozenset()

    def __post_init__(self):
        self.data_qubits = frozenset(self.data_qubits)
        self.ancilla_qubits = frozenset(self.ancilla_qubits)
        if self.data_qubits & self.ancilla_qubits:
            raise ValueError("data and ancilla registers overlap")
        for q in self.data_qubits | self.ancilla_qubits:
            if not (0 <= q < self.num_qubits):
                raise ValueError("register index out of range")

    def append(self, gate: Gate) -> None:
        for q in gate.qubits:
            if not (0 <= q < self.num_qubits):
                raise ValueError(f"gate index {q} out of range")
        self.gates.append(gate)

    def extend(self, gates) -> None:
        for g in gates:
            self.append(g)

    @property
    def size(self) -> int:
        return len(self.gates)

    def u(self, target, theta, phi=0.0, lam=0.0, gamma=0.0):
        self.append(u_gate(target, theta, phi, lam, gamma))

    def x(self, target):
        self.append(x_gate(target))

    def ry(self, target, theta):
        self.append(ry_gate(target, theta))

    def phase(self, target, delta):
        self.append(phase_gate(target, delta))

    def cx(self, control, target):
        self.append(cx_gate(control, target))

    def swap(self, a, b):
        # SWAP = 3 CNOTs
        self.cx(a, b)
        self.cx(b, a)
        self.cx(a, b)


@dataclass(frozen=True)
class ConnectivityGraph:
    """Undirected graph over qubit indices restricting 2-qubit gate placement."""

    num_vertices: int
    edges: frozenset
    topology_tag: str = "custom"

    @staticmethod
    def complete(n: int) -> "ConnectivityGraph":
        # every pair is an edge; kept implicit (has_edge special-cases the
        # tag) so large instances stay O(1) in memory
        return ConnectivityGraph(n, frozenset(), "complete")

    @staticmethod
    def grid(n1: int, n2: int) -> "ConnectivityGraph":
        """n1 x n2 grid (n1 rows, n2 columns). Vertices are numbered
        boustrophedon column-major: column 0 top-to-bottom, column 1
        bottom-to-top, etc., so consecutive vertex numbers are always
        grid-adjacent (the numbering is a Hamiltonian path)."""
        edges = set()
        for r in range(n1):
            for c in range(n2):
                v = grid_index(r, c, n1)
                if c + 1 < n2:
                    edges.add(frozenset((v, grid_index(r, c + 1, n1))))
                if r + 1 < n1:
                    edges.add(frozenset((v, grid_index(r + 1, c, n1))))
        tag = "path" if n1 == 1 else f"grid({n1},{n2})"
        return ConnectivityGraph(n1 * n2, frozenset(edges), tag)

    @staticmethod
    def path(n: int) -> "ConnectivityGraph":
        return ConnectivityGraph.grid(1, n)

    def has_edge(self, a: int, b: int) -> bool:
        if self.topology_tag == "complete":
            return (a != b and 0 <= a < self.num_vertices
                    and 0 <= b < self.num_vertices)
        return frozenset((a, b)) in self.edges


def grid_index(row: int, col: int, n1: int) -> int:
    """Vertex number of grid cell (row, col) under boustrophedon
    column-major numbering on a grid with n1 rows."""
    if col % 2 == 0:
        return col * n1 + row
    return col * n1 + (n1 - 1 - row)


@dataclass
class DepthReport:
    depth: int
    size: int
    layers: list


def asap_layering(c: Circuit) -> DepthReport:
    """Greedy earliest-slot layering: each gate goes in the first layer after
    every earlier gate sharing one of its qubits. O(size) via per-qubit
    frontier levels."""
    frontier = np.zeros(c.num_qubits, dtype=np.int64)
    layers: list = []
    for idx, g in enumerate(c.gates):
        level = 0
        for q in g.qubits:
            if frontier[q] > level:
                level = frontier[q]
        if level == len(layers):
            layers.append([])
        layers[level].append(idx)
        for q in g.qubits:
            frontier[q] = level + 1
    return DepthReport(depth=len(layers), size=len(c.gates), layers=layers)


def validate_connectivity(c: Circuit, g: ConnectivityGraph) -> list:
    """Every CNOT whose endpoints are not an edge of g, as (gate_index, gate)."""
    if c.num_qubits != g.num_vertices:
        raise ValueError("qubit count mismatch")
    out = []
    for idx, gate in enumerate(c.gates):
        if gate.kind == "cx" and not g.has_edge(*gate.qubits):
            out.append((idx, gate))
    return out


def compose(a: Circuit, b: Circuit) -> Circuit:
    if a.num_qubits != b.num_qubits:
        raise ValueError("incompatible qubit counts")
    out = Circuit(a.num_qubits, list(a.gates),
                  a.data_qubits | b.data_qubits,
                  (a.ancilla_qubits | b.ancilla_qubits)
                  - (a.data_qubits | b.data_qubits))
    out.gates.extend(b.gates)
    return out


def inverse(c: Circuit) -> Circuit:
    out = Circuit(c.num_qubits, [], c.data_qubits, c.ancilla_qubits)
    out.gates = [_inverse_gate(g) for g in reversed(c.gates)]
    return out


def remap_qubits(c: Circuit, perm: dict, num_qubits: int | None = None) -> Circuit:
    if len(set(perm.values())) != len(perm):
        raise ValueError("qubit map is not injective")
    nq = num_qubits if num_qubits is not None else c.num_qubits
    out = Circuit(nq, [],
                  frozenset(perm[q] for q in c.data_qubits),
                  frozenset(perm[q] for q in c.ancilla_qubits))
    for g in c.gates:
        out.append(Gate(g.kind, tuple(perm[q] for q in g.qubits), g.params))
    return out


# --- text format -----------------------------------------------------------
# Header lines QUBITS / DATA / ANCILLA, then one gate per line:
#   U q theta phi lam gamma
#   CX c t
# Floats use 17 significant digits so the round trip is bit-exact.


def dumps(c: Circuit) -> str:
    lines = [f"QUBITS {c.num_qubits}"]
    if c.data_qubits:
        lines.append("DATA " + ",".join(str(q) for q in sorted(c.data_qubits)))
    if c.ancilla_qubits:
        lines.append("ANCILLA " + ",".join(str(q) for q in sorted(c.ancilla_qubits)))
    for g in c.gates:
        if g.kind == "cx":
            lines.append(f"CX {g.qubits[0]} {g.qubits[1]}")
        else:
            p = " ".join(f"{x:.17g}" for x in g.params)
            lines.append(f"U {g.qubits[0]} {p}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Circuit:
    num_qubits = None
    data: frozenset = frozenset()
    anc: frozenset = frozenset()
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "QUBITS":
            num_qubits = int(tok[1])
        elif tok[0] == "DATA":
            data = frozenset(int(x) for x in tok[1].split(","))
        elif tok[0] == "ANCILLA":
            anc = frozenset(int(x) for x in tok[1].split(","))
        elif tok[0] == "U":
            gates.append(Gate("u", (int(tok[1]),), tuple(float(x) for x in tok[2:6])))
        elif tok[0] == "CX":
            gates.append(Gate("cx", (int(tok[1]), int(tok[2]))))
        else:
            raise ValueError(f"unrecognized line: {raw!r}")
    if num_qubits is None:
        raise ValueError("missing QUBITS header")
    c = Circuit(num_qubits, gates, data, anc)
    return c
