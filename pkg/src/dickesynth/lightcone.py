"""Light-cone depth lower-bound auditing.

A circuit is normalized into alternating single-qubit / CNOT layers and
mapped to a layered directed graph whose columns are qubit snapshots in
time. Walking the graph backwards from one output qubit yields its light
cone: the set of earlier qubits that can causally influence it. Two
qubits whose cones never meet are necessarily unentangled at the output,
so any circuit claiming an entangled target state admits a depth floor
from how fast cones can grow under the connectivity graph.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .circuit import Circuit, ConnectivityGraph, asap_layering

__all__ = [
    "LightConeGraph",
    "ReachableSets",
    "AuditReport",
    "build_lightcone",
    "reachable",
    "audit_lower_bound",
]


@dataclass(frozen=True)
class LightConeGraph:
    """Layered directed graph of a normalized circuit.

    Layers L_1..L_d alternate kinds 'u' (single-qubit) and 'cx'. Columns
    of vertices S_1..S_{d+1} sit between the layers; every edge points
    from column i+1 to column i. A CNOT in layer L_i contributes the four
    edges between its two qubits' vertices; a single-qubit gate on qubit
    j contributes pass-through edges (v_{i'+1}^j -> v_{i'}^j) for every
    i' >= i (identity placeholders make the pass-through universal, so
    cones never shrink on idle wires).
    """

    num_qubits: int
    depth: int                 # d: number of normalized layers
    raw_depth: int             # greedy layering depth before normalization
    kinds: tuple               # kinds[i] in {'u', 'cx'} for layer L_{i+1}
    touched: tuple             # touched[i]: frozenset of qubits acted on in L_{i+1}
    cnot_pairs: tuple          # cnot_pairs[i]: tuple of (control, target) pairs


@dataclass(frozen=True)
class ReachableSets:
    """Per-column reachable subsets of one output qubit.

    ``sets[i]`` is S'_{i+1} (vertices reachable from the origin at column
    d+1 and touched by a gate in layer L_{i+1}); ``cones[i]`` is the full
    reachable vertex set at column i+1 regardless of gate activity.
    Index 0 corresponds to column 1.
    """

    origin: int
    sets: tuple
    cones: tuple


def build_lightcone(c: Circuit) -> LightConeGraph:
    """Normalize a circuit into the alternating-layer form and build its
    layered graph. Each greedy layer splits into at most one single-qubit
    layer and one CNOT layer (so normalization at most doubles depth);
    adjacent single-qubit layers merge, since composed 1q gates are one
    gate."""
    report = asap_layering(c)
    kinds: list = []
    touched: list = []
    pairs: list = []

    def emit(kind, qubits, cx_pairs):
        if kind == "u" and kinds and kinds[-1] == "u":
            touched[-1] = touched[-1] | qubits
            return
        kinds.append(kind)
        touched.append(frozenset(qubits))
        pairs.append(tuple(cx_pairs))

    for layer in report.layers:
        uq, cxq, cxp = set(), set(), []
        for idx in layer:
            g = c.gates[idx]
            if g.kind == "cx":
                cxq.update(g.qubits)
                cxp.append(tuple(g.qubits))
            else:
                uq.add(g.qubits[0])
        if uq:
            emit("u", uq, ())
        if cxq:
            emit("cx", frozenset(cxq), cxp)
    return LightConeGraph(
        num_qubits=c.num_qubits,
        depth=len(kinds),
        raw_depth=report.depth,
        kinds=tuple(kinds),
        touched=tuple(touched),
        cnot_pairs=tuple(pairs),
    )


def reachable(g: LightConeGraph, origin: int) -> ReachableSets:
    """Backward cone walk from ``origin`` at column d+1 down to column 1."""
    if not 0 <= origin < g.num_qubits:
        raise ValueError("origin out of range")
    d = g.depth
    cone = {origin}
    cones = [None] * (d + 1)
    sets = [None] * (d + 1)
    cones[d] = frozenset(cone)
    sets[d] = frozenset(cone)
    for i in range(d, 0, -1):      # crossing layer L_i: column i+1 -> i
        for a, b in g.cnot_pairs[i - 1]:
            if a in cone or b in cone:
                cone.add(a)
                cone.add(b)
        cones[i - 1] = frozenset(cone)
        sets[i - 1] = frozenset(q for q in cone if q in g.touched[i - 1])
    return ReachableSets(origin=origin, sets=tuple(sets), cones=tuple(cones))


def _adjacency(topology: ConnectivityGraph) -> list:
    n = topology.num_vertices
    if topology.topology_tag == "complete":
        return [[w for w in range(n) if w != v] for v in range(n)]
    adj = [[] for _ in range(n)]
    for e in topology.edges:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _bfs_levels(adj, start: int) -> list:
    dist = [-1] * len(adj)
    dist[start] = 0
    dq = deque([start])
    while dq:
        v = dq.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                dq.append(w)
    return dist


@dataclass
class AuditReport:
    """Light-cone audit of a circuit against a claimed entangled target."""

    topology_tag: str
    num_qubits: int
    raw_depth: int
    normalized_depth: int
    origins: tuple
    cone_sizes: dict            # origin -> tuple |S'_i| for columns 1..d+1
    cones_intersect: bool
    growth_ok: bool             # cap obeyed at every column for both origins
    floor: int
    depth_ok: bool
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.cones_intersect and self.growth_ok and self.depth_ok

    def text(self) -> str:
        lines = [
            f"light-cone audit: topology={self.topology_tag} "
            f"n={self.num_qubits}",
            f"depth raw={self.raw_depth} normalized={self.normalized_depth} "
            f"floor={self.floor} -> {'ok' if self.depth_ok else 'BELOW FLOOR'}",
            f"extremal origins {self.origins[0]} and {self.origins[1]}: cones "
            f"{'intersect' if self.cones_intersect else 'DISJOINT'}",
            f"cone growth caps: {'ok' if self.growth_ok else 'VIOLATED'}",
        ]
        for origin in self.origins:
            sizes = self.cone_sizes[origin]
            lines.append(f"origin {origin} |S'_i| per column: "
                         + " ".join(str(s) for s in sizes))
        lines.append("audit " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def audit_lower_bound(c: Circuit, topology: ConnectivityGraph) -> AuditReport:
    """Audit a circuit claiming an entangled target (e.g. a Dicke state).

    Checks that (a) the light cones of two extremal qubits intersect,
    (b) per-column reachable-set sizes respect the connectivity growth
    caps (2^{d-i+2} on a complete graph; graph-distance ball sizes
    otherwise), and (c) the normalized depth meets the implied floor
    (ceil(log2 n) - 1 on a complete graph, half the graph diameter
    otherwise, since a cone's radius grows by at most one per layer).
    """
    g = build_lightcone(c)
    d = g.depth
    n = g.num_qubits
    adj = _adjacency(topology)

    # extremal pair by double BFS (exact on grids and paths)
    dist0 = _bfs_levels(adj, 0)
    far = max(range(n), key=lambda v: dist0[v])
    dist_far = _bfs_levels(adj, far)
    other = max(range(n), key=lambda v: dist_far[v])
    diameter = dist_far[other]
    origins = (far, other)

    complete = topology.topology_tag == "complete"
    cone_sizes = {}
    growth_ok = True
    reach = {}
    for origin in origins:
        r = reachable(g, origin)
        reach[origin] = r
        sizes = tuple(len(s) for s in r.sets)
        cone_sizes[origin] = sizes
        dist = _bfs_levels(adj, origin)
        for col in range(1, d + 2):    # column index i, sets[col-1]
            steps = d - col + 1        # layers crossed from column d+1
            if complete:
                cap = 1 << min(steps + 1, max(n.bit_length(), 1))
                cap = min(cap, n)
            else:
                cap = sum(1 for v in range(n) if 0 <= dist[v] <= steps)
            if len(r.sets[col - 1]) > cap:
                growth_ok = False

    cones_intersect = bool(reach[origins[0]].cones[0]
                           & reach[origins[1]].cones[0])
    if complete:
        floor = max(1, math.ceil(math.log2(n)) - 1) if n > 1 else 0
    else:
        floor = math.ceil(diameter / 2)
    depth_ok = g.depth >= floor
    return AuditReport(
        topology_tag=topology.topology_tag,
        num_qubits=n,
        raw_depth=g.raw_depth,
        normalized_depth=d,
        origins=origins,
        cone_sizes=cone_sizes,
        cones_intersect=cones_intersect,
        growth_ok=growth_ok,
        floor=floor,
        depth_ok=depth_ok,
    )
