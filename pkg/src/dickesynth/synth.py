"""Top-level Dicke-state synthesizers.

Three synthesis strategies share one functional contract — the produced
circuit maps |0^{n-l}1^l> -> |D^n_l> for every l in [k]_0, with the l input
ones occupying qubits 0..l-1:

* ``synth_alltoall``: recursive halving on unrestricted connectivity, each
  split realized by an ancilla-accelerated divide unitary borrowing the
  node's own idle qubits.
* ``synth_grid``: 2D nearest-neighbor synthesis; a slab-register bisection
  when the grid is tall enough (k >= n2/n1) and a left-to-right column-group
  sweep otherwise.
* ``dicke_unitary_path`` (in :mod:`.unary`): the linear-depth ladder both of
  the above fall back to on small blocks.

``prepare_dicke`` / ``prepare_symmetric`` wrap the synthesizers with the
input-loading gates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import (Circuit, ConnectivityGraph, Gate, asap_layering,
                      grid_index, inverse)
from .encoding import binary_width, u_ob, u_plus, u_uo, u_minus
from .primitives import cqsp_multiplexor, fanout_copy, toffoli
from .unary import (DivideSpec, dicke_unitary_path, divide_unitary_path,
                    hyper_weights, unary_amplitude_prep)

__all__ = [
    "PlanNode",
    "SynthesisPlan",
    "GridPartition",
    "divide_unitary_ancilla",
    "synth_alltoall",
    "synth_grid",
    "prepare_dicke",
    "prepare_symmetric",
]


@dataclass(frozen=True)
class PlanNode:
    """One divide step of a synthesis recursion."""

    layer: int
    n_node: int
    m_node: int
    s1: tuple
    s2: tuple
    ancilla: tuple
    depth: int
    size: int

    def line(self) -> str:
        return (f"layer={self.layer} n={self.n_node} m={self.m_node} "
                f"s1={list(self.s1)} s2={list(self.s2)} "
                f"ancilla={len(self.ancilla)} depth={self.depth} "
                f"size={self.size}")


@dataclass(frozen=True)
class GridPartition:
    """Register-cell geometry of a grid synthesis (n1 rows, n2 columns).

    ``cell_dims`` is the (rows, cols) shape of one count-register slab;
    ``cells`` maps a cell id to the tuple of its vertices in serpentine
    order (the count register is the k-cell prefix of that order)."""

    n1: int
    n2: int
    cell_dims: tuple
    cells: dict = field(default_factory=dict)


@dataclass
class SynthesisPlan:
    """Audit record of a synthesis run: one entry per divide node plus the
    terminal small-block Dicke unitaries."""

    topology: ConnectivityGraph
    n: int
    k: int
    recursion_tree: list = field(default_factory=list)
    tail_units: list = field(default_factory=list)
    partition: GridPartition | None = None

    def report(self) -> str:
        lines = [f"plan topology={self.topology.topology_tag} n={self.n} k={self.k}"]
        for node in self.recursion_tree:
            lines.append("  divide " + node.line())
        for unit in self.tail_units:
            lines.append(f"  tail qubits={list(unit)}")
        return "\n".join(lines) + "\n"


def _offset_gates(gates, off: int) -> list:
    if off == 0:
        return gates
    out = []
    for g in gates:
        qs = g.qubits
        shifted = (qs[0] + off,) if len(qs) == 1 else (qs[0] + off,
                                                       qs[1] + off)
        out.append(Gate(g.kind, shifted, g.params))
    return out


def _subcircuit_stats(c: Circuit, start: int) -> tuple:
    sub = Circuit(c.num_qubits)
    sub.gates = list(c.gates[start:])
    return asap_layering(sub).depth, len(sub.gates)


# --- ancilla-accelerated divide --------------------------------------------


def divide_unitary_ancilla(spec: DivideSpec, ancilla=(),
                           num_qubits: int | None = None) -> Circuit:
    """Divide unitary D^{n,m}_k using N clean ancilla, restored on exit.

    With N < 2k the nearest-neighbor conveyor is used directly. With
    N >= 2k the count is converted unary -> one-hot -> binary, the split
    amplitudes are loaded by a controlled state preparation on a
    log-width register, and one-hot arithmetic separates the two shares:

      (a) S2: unary l -> one-hot l -> binary l
      (b) controlled prep of binary i on S1 with amplitudes w_i(l)
      (c) binary -> one-hot on S1 and S2
      (d) one-hot subtraction: scratch W <- one-hot (l-i)
      (e) inverse one-hot addition clears S2
      (f) swap W into S2; one-hot -> unary on S1 and S2
    """
    anc = list(ancilla)
    k = spec.k
    data = set(spec.left) | set(spec.right)
    if data & set(anc):
        raise ValueError("ancilla overlaps data registers")
    if len(set(anc)) != len(anc):
        raise ValueError("duplicate ancilla index")
    everything = list(data | set(anc))
    nq = num_qubits if num_qubits is not None else max(everything) + 1
    if len(anc) < 2 * k:
        path = divide_unitary_path(spec)
        c = Circuit(nq)
        c.extend(path.gates)
        return c

    s1 = list(spec.left)
    s2 = list(spec.right)
    c = Circuit(nq)
    cw = binary_width(k)

    # (a) unary -> one-hot on S2; qubit s2[l-1] is now the flag for count l
    u_uo(s2, circuit=c)

    # (b) controlled preparation of binary i on S1 with amplitudes w_i(l).
    # Row states are prepared flag-gated on disjoint cw-wide ancilla
    # blocks (all counts of a batch in parallel), then flag-controlled
    # swaps move the selected block into S1. On the l = 0 branch no flag
    # is set, leaving S1 = |0..0> = e_0 as required. Depth is
    # O(ceil(k/p) * 2^cw + k), the ancilla-scaled CQSP trade-off.
    dim = 1 << cw
    rows = np.zeros((k + 1, dim))
    for ell in range(1, k + 1):
        w = hyper_weights(spec.n, spec.m, k, ell)
        rows[ell, :k + 1] = w
        rows[ell] /= np.linalg.norm(rows[ell])
    e0 = np.zeros(dim)
    e0[0] = 1.0
    # each batch unit holds a cw-wide row block plus a cw-wide copy of the
    # loaded binary value feeding its erase Toffolis
    unit = 2 * cw
    p = max(1, min(k, len(anc) // unit))
    blocks = [anc[j * unit:j * unit + cw] for j in range(p)]
    s1cop = [anc[j * unit + cw:(j + 1) * unit] for j in range(p)]
    for lo in range(1, k + 1, p):
        batch = list(range(lo, min(lo + p, k + 1)))
        nb = len(batch)
        for j, ell in enumerate(batch):
            cqsp_multiplexor([s2[ell - 1]], blocks[j],
                             np.array([e0, rows[ell]]), circuit=c)
        # at most one flag per basis value, so at most one block is nonzero:
        # XOR-fold the blocks pairwise into blocks[0], add into S1, unfold
        fold = []
        step = 1
        while step < nb:
            for a in range(0, nb - step, 2 * step):
                fold.extend((blocks[a + step][t], blocks[a][t])
                            for t in range(cw))
            step *= 2
        for a, b in fold:
            c.cx(a, b)
        for t in range(cw):
            c.cx(blocks[0][t], s1[t])
        for a, b in reversed(fold):
            c.cx(a, b)
        # erase the active block: its bits now equal the value on S1
        fan = fanout_copy(s1[:cw], s1cop[:nb], num_qubits=c.num_qubits)
        c.extend(fan.gates)
        for j, ell in enumerate(batch):
            for t in range(cw):
                toffoli([s2[ell - 1], s1cop[j][t]], blocks[j][t], "11",
                        circuit=c)
        c.extend(reversed(fan.gates))

    # (c) binary -> one-hot on S1
    c.extend(inverse(u_ob(s1, anc, num_qubits=nq)).gates)

    # (d) scratch <- one-hot (l - i)
    scratch = anc[:k]
    u_minus(s1, s2, scratch, ancilla=anc[k:], circuit=c)

    # (e) clear the one-hot l on S2: forward addition maps
    # (i, l-i, 0) -> (i, l-i, l), so its inverse erases S2.
    c.extend(inverse(u_plus(s1, scratch, s2, ancilla=anc[k:],
                            num_qubits=nq)).gates)

    # (f) move the right share into S2 and return both to unary
    for j in range(k):
        c.swap(s2[j], scratch[j])
    c.extend(inverse(u_uo(s1, num_qubits=nq)).gates)
    c.extend(inverse(u_uo(s2, num_qubits=nq)).gates)
    return c


# --- all-to-all recursion ---------------------------------------------------


def synth_alltoall(n: int, k: int) -> tuple:
    """Dicke unitary on unrestricted connectivity.

    Recursively halves the qubit block; each node's divide borrows the
    node's own idle (still |0>) qubits as clean ancilla, so depth is
    O(log k log(n/k) + k). For k > n/4 the recursion is not worthwhile and
    the linear ladder is used outright."""
    if not 1 <= k <= n // 2:
        raise ValueError("require 1 <= k <= n/2")
    g = ConnectivityGraph.complete(n)
    plan = SynthesisPlan(g, n, k)
    c = Circuit(n)

    if k > n // 4:
        c.extend(dicke_unitary_path(n, k).gates)
        plan.tail_units.append(tuple(range(n)))
        return c, plan

    # every node of a layer is an identical contiguous block, so each block
    # size is synthesized once and reused by qubit-index offset
    divide_cache: dict = {}
    tail_cache: dict = {}

    def divide_template(nn: int) -> tuple:
        if nn not in divide_cache:
            half = nn // 2
            m = nn - half
            spec = DivideSpec(n=nn, m=m, k=k,
                              left=tuple(range(half, half + k)),
                              right=tuple(range(k)))
            idle = tuple(range(k, half)) + tuple(range(half + k, nn))
            # build both divide realizations and keep the shallower: at
            # small and moderate k the conveyor's c*k depth beats the
            # pipeline's state-preparation stage, while the pipeline wins
            # once enough ancilla make its encoding stages effectively flat
            cand = [divide_unitary_ancilla(spec, idle, num_qubits=nn)]
            if len(idle) >= 2 * k:  # otherwise cand[0] already is the conveyor
                cand.append(divide_unitary_ancilla(spec, (), num_qubits=nn))
            scored = [(asap_layering(s).depth, s) for s in cand]
            depth, sub = min(scored, key=lambda t: t[0])
            divide_cache[nn] = (sub.gates, depth, sub.size)
        return divide_cache[nn]

    def tail_template(nn: int) -> list:
        if nn not in tail_cache:
            tail_cache[nn] = dicke_unitary_path(nn, min(k, nn)).gates
        return tail_cache[nn]

    def rec(base: int, nn: int, layer: int) -> None:
        if nn <= 2 * k:
            # template gates were validated once; offsets stay in range
            c.gates.extend(_offset_gates(tail_template(nn), base))
            plan.tail_units.append(tuple(range(base, base + nn)))
            return
        half = nn // 2            # low half keeps the count (S2 side)
        m = nn - half             # capacity routed to S1
        gates, depth, size = divide_template(nn)
        c.gates.extend(_offset_gates(gates, base))
        s2 = tuple(range(base, base + k))
        s1 = tuple(range(base + half, base + half + k))
        idle = (tuple(range(base + k, base + half))
                + tuple(range(base + half + k, base + nn)))
        plan.recursion_tree.append(PlanNode(layer, nn, m, s1, s2, idle,
                                            depth, size))
        rec(base, half, layer + 1)
        rec(base + half, nn - half, layer + 1)

    rec(0, n, 1)
    return c, plan


# --- grid synthesis ---------------------------------------------------------


def _slab_serpentine(c0: int, width: int, n1: int) -> list:
    """Vertices of columns c0..c0+width-1, serpentine order anchored at c0
    (first column top-down). Consecutive entries are grid-adjacent."""
    out = []
    for t in range(width):
        rows = range(n1) if t % 2 == 0 else range(n1 - 1, -1, -1)
        out.extend(grid_index(r, c0 + t, n1) for r in rows)
    return out


def _permute_on_path(c: Circuit, path: list, dest: list) -> None:
    """Realize the permutation sending the content of path[i] to
    path[dest[i]] with nearest-neighbor SWAPs: odd-even transposition sort
    of the destination labels, at most len(path) rounds."""
    dest = list(dest)
    length = len(dest)
    if sorted(dest) != list(range(length)):
        raise ValueError("dest is not a permutation")
    for rnd in range(length):
        if dest == sorted(dest):
            break
        for i in range(rnd % 2, length - 1, 2):
            if dest[i] > dest[i + 1]:
                c.swap(path[i], path[i + 1])
                dest[i], dest[i + 1] = dest[i + 1], dest[i]


def _embed_moves(path: list, moves: dict) -> list:
    """Destination labels for _permute_on_path from a sparse position map
    {src_pos: dst_pos}; unconstrained positions fill the remaining slots in
    order (they carry |0> so their placement is immaterial)."""
    length = len(path)
    dest = [-1] * length
    used = set(moves.values())
    for s, d in moves.items():
        dest[s] = d
    free = iter(i for i in range(length) if i not in used)
    for i in range(length):
        if dest[i] < 0:
            dest[i] = next(free)
    return dest


def _route_block(c: Circuit, c0: int, cdst: int, w: int, k: int,
                 n1: int) -> None:
    """Move the k-cell count share from serpentine positions k..2k-1 of the
    double slab at columns [c0, c0+2w) onto the slab-register prefix at
    columns [cdst, cdst+w), cdst >= c0+w.

    Two phases: a local rearrangement inside the double slab placing the
    share on the second slab's own serpentine prefix, then a horizontal
    per-row translation of that slab (rows move in parallel)."""
    strip = _slab_serpentine(c0, 2 * w, n1)
    slab2 = _slab_serpentine(c0 + w, w, n1)
    pos = {v: i for i, v in enumerate(strip)}
    moves = {k + t: pos[slab2[t]] for t in range(k)}
    if any(s != d for s, d in moves.items()):
        if 2 * w * n1 <= 6 * k:
            _permute_on_path(c, strip, _embed_moves(strip, moves))
        else:
            # thin slab (w == 1, n1 > 2k): share sits in column c0 rows
            # k..2k-1; one horizontal step per row, then a vertical
            # rotation confined to the top 2k cells of column c0+1.
            for r in range(k, 2 * k):
                c.swap(grid_index(r, c0, n1), grid_index(r, c0 + 1, n1))
            col = [grid_index(r, c0 + 1, n1) for r in range(2 * k)]
            dest = [(i + k) % (2 * k) for i in range(2 * k)]
            _permute_on_path(c, col, dest)
    delta = cdst - (c0 + w)
    if delta > 0:
        # shift the whole slab delta columns right, zeros backfilling left
        span = delta + w
        for r in range(n1):
            row = [grid_index(r, c0 + w + t, n1) for t in range(span)]
            dest = [t + delta if t < w else t - w for t in range(span)]
            _permute_on_path(c, row, dest)


def synth_grid(n1: int, n2: int, k: int) -> tuple:
    """Dicke unitary with all gates on edges of the n1 x n2 grid.

    The count register of a column region is the k-cell prefix of the
    region's serpentine (column-major boustrophedon), which for the whole
    grid coincides with qubits 0..k-1. Tall case (k >= n2/n1): balanced
    column bisection, one nearest-neighbor divide per node followed by a
    horizontal slab move of the right share, depth O(k log(n/k) + n2).
    Wide case (k < n2/n1): left-to-right sweep over column groups of
    capacity ~ n1 k, depth O(n2)."""
    if n1 > n2:
        raise ValueError("require n1 <= n2")
    n = n1 * n2
    if not 1 <= k <= n // 2:
        raise ValueError("require 1 <= k <= n1*n2/2")
    g = ConnectivityGraph.grid(n1, n2)
    plan = SynthesisPlan(g, n, k)
    if n1 == 1:
        c = Circuit(n)
        c.extend(dicke_unitary_path(n2, k).gates)
        plan.tail_units.append(tuple(range(n)))
        return c, plan

    c = Circuit(n)
    w = math.ceil(k / n1)
    plan.partition = GridPartition(n1, n2, (n1, w))

    def tail(c0: int, width: int) -> None:
        snake = _slab_serpentine(c0, width, n1)
        c.extend(dicke_unitary_path(len(snake), min(k, len(snake)),
                                    snake).gates)
        plan.tail_units.append(tuple(snake))
        plan.partition.cells[len(plan.partition.cells)] = tuple(snake[:k])

    def divide_step(c0: int, c1: int, cmid: int, layer: int) -> None:
        """Divide the count of region [c0,c1) between [c0,cmid) and
        [cmid,c1); the right share lands on the slab register at cmid."""
        dsnake = _slab_serpentine(c0, 2 * w, n1)
        s2, s1 = dsnake[:k], dsnake[k:2 * k]
        spec = DivideSpec(n=n1 * (c1 - c0), m=n1 * (c1 - cmid), k=k,
                          left=tuple(s1), right=tuple(s2))
        start = len(c.gates)
        c.extend(divide_unitary_path(spec).gates)
        _route_block(c, c0, cmid, w, k, n1)
        depth, size = _subcircuit_stats(c, start)
        plan.recursion_tree.append(PlanNode(layer, n1 * (c1 - c0),
                                            n1 * (c1 - cmid), tuple(s1),
                                            tuple(s2), (), depth, size))

    if k * n1 >= n2:
        # tall case: balanced bisection over column intervals
        def rec(c0: int, c1: int, layer: int) -> None:
            width = c1 - c0
            if width < 2 * w or n1 * width <= 2 * k:
                tail(c0, width)
                return
            cmid = c0 + width // 2
            divide_step(c0, c1, cmid, layer)
            rec(c0, cmid, layer + 1)
            rec(cmid, c1, layer + 1)

        rec(0, n2, 1)
    else:
        # wide case: linear sweep, one column group per step
        gw = max(k, 2 * w)
        c0, layer = 0, 1
        while n2 - c0 >= 2 * gw:
            divide_step(c0, n2, c0 + gw, layer)
            tail(c0, gw)
            c0 += gw
            layer += 1
        tail(c0, n2 - c0)
    return c, plan


# --- state preparation wrappers ---------------------------------------------


def _synthesize(topology: str, dims, k: int) -> tuple:
    if topology == "complete":
        return synth_alltoall(int(dims), k)
    if topology == "path":
        n = int(dims)
        return synth_grid(1, n, k)
    if topology == "grid":
        n1, n2 = dims
        return synth_grid(n1, n2, k)
    raise ValueError(f"unknown topology {topology!r}")


def prepare_dicke(topology: str, dims, k: int) -> Circuit:
    """Circuit preparing |D^n_k> from |0^n>: X gates load the k input ones
    onto qubits 0..k-1, then the topology's Dicke unitary runs."""
    unitary, _ = _synthesize(topology, dims, k)
    c = Circuit(unitary.num_qubits)
    for q in range(k):
        c.x(q)
    c.extend(unitary.gates)
    return c


def prepare_symmetric(topology: str, dims, k: int, amplitudes) -> Circuit:
    """Circuit preparing the symmetric state sum_l alpha_l |D^n_l> from
    |0^n>: amplitude loading on the k input qubits (adjacent rotation
    chain), then the topology's Dicke unitary."""
    alpha = np.asarray(amplitudes, dtype=complex)
    if abs(np.linalg.norm(alpha) - 1.0) > 1e-9:
        raise ValueError("non-normalized amplitudes")
    unitary, _ = _synthesize(topology, dims, k)
    c = Circuit(unitary.num_qubits)
    c.extend(unary_amplitude_prep(k, alpha).gates)
    c.extend(unitary.gates)
    return c
