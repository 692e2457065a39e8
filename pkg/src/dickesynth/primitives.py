"""Reusable sub-circuits: pattern Toffolis, parity tree, fanout copy,
grid block routing, and multiplexed-rotation controlled state preparation.
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import Circuit, ConnectivityGraph, cx_gate, grid_index, u_gate, x_gate

__all__ = [
    "build_ccx",
    "toffoli",
    "parity_add",
    "fanout_copy",
    "grid_route",
    "mux_ry",
    "cqsp_multiplexor",
]

_T = math.pi / 4  # T-gate phase


def _rz(c: Circuit, q: int, phi: float) -> None:
    # Rz(phi) = diag(e^{-i phi/2}, e^{i phi/2}) up to global phase; the
    # quadruple (0, 0, phi, -phi/2) realizes it exactly.
    c.u(q, 0.0, 0.0, phi, -phi / 2.0)


def _t(c: Circuit, q: int, sign: float) -> None:
    # phase-exact T / T-dagger = diag(1, e^{+-i pi/4}); using the plain Rz
    # version instead would leave every Toffoli with a global phase of
    # -pi/8, which accumulates state-dependently in controlled contexts.
    c.phase(q, sign * _T)


def _h(c: Circuit, q: int) -> None:
    c.u(q, math.pi / 2.0, 0.0, math.pi, 0.0)


def build_ccx(c: Circuit, a: int, b: int, t: int) -> None:
    """Standard 6-CNOT + 1-qubit Toffoli with controls a, b and target t."""
    _h(c, t)
    c.cx(b, t)
    _t(c, t, -1.0)
    c.cx(a, t)
    _t(c, t, +1.0)
    c.cx(b, t)
    _t(c, t, -1.0)
    c.cx(a, t)
    _t(c, b, +1.0)
    _t(c, t, +1.0)
    c.cx(a, b)
    _h(c, t)
    _t(c, a, +1.0)
    _t(c, b, -1.0)
    c.cx(a, b)


def _mcx_no_ancilla(c: Circuit, controls: list, t: int,
                    borrow=None) -> None:
    """Multi-controlled X using only the qubits already present in c: for
    three or more controls, borrow idle qubits (from `borrow` if given, else
    any index outside the gate's support — borrowed qubits may hold
    arbitrary states and are restored) for the linear-size dirty-ancilla
    staircase; a single borrowable qubit still gives linear size via the
    halving split; with no spare wire at all, fall back to the quadratic
    controlled-root recursion."""
    m = len(controls)
    if m == 0:
        c.x(t)
    elif m == 1:
        c.cx(controls[0], t)
    elif m == 2:
        build_ccx(c, controls[0], controls[1], t)
    else:
        support = set(controls) | {t}
        pool = borrow if borrow is not None else range(c.num_qubits)
        lent = [q for q in pool if q not in support][:m - 2]
        if len(lent) == m - 2:
            _mcx_dirty(c, controls, t, lent)
        elif lent:
            _mcx_one_borrow(c, controls, t, lent[0])
        else:
            _mcv_chain(c, controls, t, math.pi)


def _mcx_one_borrow(c: Circuit, controls: list, t: int, w: int) -> None:
    """Multi-controlled X with a single borrowed (possibly dirty) qubit w:
    split the controls in half and alternate the two halves so each piece
    can borrow the idle half for its staircase; w's toggles cancel and the
    target picks up exactly AND(controls)."""
    m = len(controls)
    h = (m + 1) // 2
    first, second = controls[:h], controls[h:]
    for _ in range(2):
        _mcx_with_borrows(c, second + [w], t, first)
        _mcx_with_borrows(c, first, w, second + [t])


def _mcx_with_borrows(c: Circuit, controls: list, t: int, pool: list) -> None:
    """Staircase MCX drawing exactly the borrows it needs from pool."""
    m = len(controls)
    if m == 1:
        c.cx(controls[0], t)
    elif m == 2:
        build_ccx(c, controls[0], controls[1], t)
    else:
        _mcx_dirty(c, controls, t, pool[:m - 2])


def _mcx_dirty(c: Circuit, controls: list, t: int, anc: list) -> None:
    """Staircase of 4(m-2) Toffolis with m-2 borrowed (possibly dirty)
    qubits; borrowed values are restored exactly."""
    m = len(controls)
    down = [(controls[m - 1], anc[m - 3], t)]
    down += [(controls[j], anc[j - 2], anc[j - 1]) for j in range(m - 2, 1, -1)]
    down += [(controls[0], controls[1], anc[0])]
    up = [(controls[j], anc[j - 2], anc[j - 1]) for j in range(2, m - 1)]
    for a, b, tt in down + up + down + up:
        build_ccx(c, a, b, tt)


def _mcv_chain(c: Circuit, controls: list, t: int, angle: float) -> None:
    """Exact C^m-(X^{angle/pi}) via the textbook controlled-root recursion:
      C^{m}V = CV^{1/2}(last->t) . C^{m-1}X(rest->last) . CV^{-1/2}(last->t)
               . C^{m-1}X(rest->last) . C^{m-1}V^{1/2}(rest->t).
    The inner C^{m-1}X pieces can borrow t, so each level costs O(m) gates
    and the whole recursion is quadratic; used only when the circuit has no
    spare wire at all."""
    m = len(controls)
    if m == 1:
        _crx(c, controls[0], t, angle)
        return
    last, rest = controls[-1], controls[:-1]
    _crx(c, last, t, angle / 2.0)
    _mcx_no_ancilla(c, rest, last)
    _crx(c, last, t, -angle / 2.0)
    _mcx_no_ancilla(c, rest, last)
    _mcv_chain(c, rest, t, angle / 2.0)


def _crx(c: Circuit, ctrl: int, t: int, angle: float) -> None:
    """Controlled RX(angle) with the phase convention making the m=1 base of
    the C^m-X recursion exact: control=1 applies e^{i angle/2} RX(angle),
    i.e. the actual X-power so that angle=pi gives a true CNOT."""
    # e^{i a/2} RX(a) = diag-free matrix [[cos+isin.., ..]]; realize as
    # phase(a/2 on ctrl) then controlled-RX via two CNOTs and RZ/RY... use
    # the generic decomposition: CU = (1 x A) CX (1 x B) CX (1 x C) P(ctrl).
    half = angle / 2.0
    # U = e^{i half} RX(angle): U = P(half) * RX(angle) as a matrix product
    # of scalars. Decompose CU with U = e^{i alpha} Rz(b) Ry(g) Rz(d):
    # RX(a) = Rz(-pi/2) Ry(a) Rz(pi/2), alpha = half.
    b, g, d = -math.pi / 2.0, angle, math.pi / 2.0
    # A = Rz(b) Ry(g/2), B = Ry(-g/2) Rz(-(d+b)/2), C = Rz((d-b)/2)
    _rz(c, t, (d - b) / 2.0)
    c.cx(ctrl, t)
    c.u(t, -g / 2.0, 0.0, 0.0, 0.0)
    _rz(c, t, -(d + b) / 2.0)
    c.cx(ctrl, t)
    c.u(t, g / 2.0, 0.0, 0.0, 0.0)
    _rz(c, t, b)
    c.phase(ctrl, half)


def toffoli(controls, target: int, pattern: str, mode: str = "no_ancilla",
            ancilla=None, num_qubits: int | None = None,
            circuit: Circuit | None = None, borrow=None) -> Circuit:
    """Flip `target` iff the control register equals `pattern`.

    pattern[j] is the required value of controls[j]. Zero-controls are
    conjugated by X. mode 'no_ancilla' needs no extra qubits; 'log_depth'
    uses a balanced AND-tree over >= len(controls)-1 clean ancilla.
    `borrow` restricts which (possibly dirty) qubits a >=3-control gate may
    recruit for the staircase decomposition; without it any idle circuit
    qubit is fair game, which can create scheduling dependencies on
    registers the caller wants free to run in parallel.
    """
    controls = list(controls)
    if len(pattern) != len(controls):
        raise ValueError("pattern width mismatch")
    touched = set(controls) | {target}
    if len(touched) != len(controls) + 1:
        raise ValueError("overlapping index sets")
    if circuit is None:
        nq = num_qubits if num_qubits is not None else (
            max(touched | set(ancilla or [])) + 1)
        circuit = Circuit(nq)
    c = circuit
    zeros = [q for q, b in zip(controls, pattern) if b == "0"]
    for q in zeros:
        c.x(q)
    if mode == "no_ancilla":
        _mcx_no_ancilla(c, controls, target, borrow)
    elif mode == "log_depth":
        anc = list(ancilla or [])
        if len(anc) < max(len(controls) - 1, 0):
            raise ValueError("insufficient ancilla")
        if set(anc) & touched:
            raise ValueError("overlapping index sets")
        _and_tree(c, controls, target, anc)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for q in zeros:
        c.x(q)
    return c


def _and_tree(c: Circuit, controls: list, target: int, anc: list) -> None:
    """Balanced tree of CCX gates computing AND(controls) into an ancilla,
    CNOT onto the target, then exact uncomputation. Depth O(log |controls|)."""
    level = list(controls)
    used = []
    forward: list = []
    ai = 0
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            a = anc[ai]
            ai += 1
            forward.append((level[i], level[i + 1], a))
            used.append(a)
            nxt.append(a)
        if len(level) % 2 == 1:
            nxt.append(level[-1])
        level = nxt
    for a, b, t in forward:
        build_ccx(c, a, b, t)
    c.cx(level[0], target)
    for a, b, t in reversed(forward):
        build_ccx(c, a, b, t)


def parity_add(sources, target: int, num_qubits: int | None = None,
               circuit: Circuit | None = None) -> Circuit:
    """target ^= XOR of sources via a balanced CNOT tree plus uncomputation;
    sources are restored. Depth O(log |sources|)."""
    src = list(sources)
    if target in src:
        raise ValueError("target overlaps sources")
    if circuit is None:
        nq = num_qubits if num_qubits is not None else max(src + [target]) + 1
        circuit = Circuit(nq)
    c = circuit
    # fold pairs: XOR accumulates leftward onto src[i] from src[i+step]
    steps: list = []
    step = 1
    while step < len(src):
        for i in range(0, len(src) - step, 2 * step):
            steps.append((src[i + step], src[i]))
        step *= 2
    for a, b in steps:
        c.cx(a, b)
    if src:
        c.cx(src[0], target)
    for a, b in reversed(steps):
        c.cx(a, b)
    return c


def fanout_copy(src, dst_blocks, num_qubits: int | None = None,
                circuit: Circuit | None = None) -> Circuit:
    """CNOT-copy the w-wide source block into t disjoint zeroed blocks by
    doubling: every round, every block already holding the value copies to
    one fresh block. Depth ceil(log2(t+1)) per bit column; columns parallel."""
    src = list(src)
    blocks = [list(b) for b in dst_blocks]
    w = len(src)
    flat = set(src)
    for b in blocks:
        if len(b) != w:
            raise ValueError("block width mismatch")
        if flat & set(b):
            raise ValueError("blocks overlap")
        flat |= set(b)
    if circuit is None:
        nq = num_qubits if num_qubits is not None else max(flat) + 1
        circuit = Circuit(nq)
    c = circuit
    have = [src]
    todo = list(blocks)
    while todo:
        new = []
        for holder in have:
            if not todo:
                break
            blk = todo.pop(0)
            for j in range(w):
                c.cx(holder[j], blk[j])
            new.append(blk)
        have.extend(new)
    return c


def grid_route(state_map: dict, g: ConnectivityGraph, n1: int, n2: int) -> Circuit:
    """Permute basis contents of grid cells: state_map maps source vertex ->
    destination vertex and must be a permutation of its key set. Disjoint
    transpositions are routed as parallel L-shaped SWAP conveyors
    (row move then column move); anything else is serialized per cycle.
    All SWAPs are grid-legal; depth O(n1 + n2) for disjoint transpositions.
    """
    if set(state_map.keys()) != set(state_map.values()):
        raise ValueError("state_map is not a permutation")
    c = Circuit(n1 * n2)
    # decompose into cycles, each cycle into adjacent-cell transposition walks
    seen = set()
    for start in sorted(state_map):
        if start in seen or state_map[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        cur = state_map[start]
        while cur != start:
            cycle.append(cur)
            cur = state_map[cur]
        seen.update(cycle)
        # realize the cycle as successive transpositions on the grid:
        # (v0 v1)(v0 v2)...(v0 v_{m-1}) in gate order sends v_i -> v_{i+1}
        for i in range(1, len(cycle)):
            _swap_cells(c, cycle[0], cycle[i], n1)
    return c


def _cell_rc(v: int, n1: int) -> tuple:
    col = v // n1
    r = v - col * n1 if col % 2 == 0 else (n1 - 1 - (v - col * n1))
    return r, col


def _swap_cells(c: Circuit, a: int, b: int, n1: int) -> None:
    """SWAP contents of two grid cells through an L-shaped nearest-neighbor
    conveyor: walk a to b's column, then down/up to b, then walk back."""
    ra, ca = _cell_rc(a, n1)
    rb, cb = _cell_rc(b, n1)
    path = []
    cur = (ra, ca)
    while cur[1] != cb:
        cur = (cur[0], cur[1] + (1 if cb > cur[1] else -1))
        path.append(cur)
    while cur[0] != rb:
        cur = (cur[0] + (1 if rb > cur[0] else -1), cur[1])
        path.append(cur)
    verts = [grid_index(ra, ca, n1)] + [grid_index(r, col, n1) for r, col in path]
    # bubble a's content to b, then bubble b's (now displaced backward) home
    for i in range(len(verts) - 1):
        c.swap(verts[i], verts[i + 1])
    for i in range(len(verts) - 2, 0, -1):
        c.swap(verts[i - 1], verts[i])


def mux_ry(controls, target: int, angles, circuit: Circuit,
           adjacent_only: bool = False) -> None:
    """Uniformly controlled Ry: apply Ry(angles[x]) to target when the
    control register holds basis value x (controls[0] = least significant).
    Standard gray-code multiplexor: 2^c rotations and 2^c CNOTs.
    """
    controls = list(controls)
    cbits = len(controls)
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (1 << cbits,):
        raise ValueError("angle table size mismatch")
    if cbits == 0:
        if angles[0] != 0.0:
            circuit.ry(target, float(angles[0]))
        return
    _mux_ry_rec(circuit, controls, target, angles.tolist())


def _mux_ry_rec(c: Circuit, controls: list, target: int, angles: list) -> None:
    if not any(angles):
        return  # all-zero subtree: identity, nothing to emit
    if len(controls) == 0:
        c.ry(target, angles[0])
        return
    # split on the most significant control: Ry(a) controlled-on-msb
    # = Ry((a0+a1)/2) . CX(msb,t) . Ry((a0-a1)/2) . CX(msb,t)
    half = len(angles) // 2
    plus = [(angles[i] + angles[half + i]) / 2.0 for i in range(half)]
    minus = [(angles[i] - angles[half + i]) / 2.0 for i in range(half)]
    msb = controls[-1]
    if not any(minus):
        # halves agree: the msb control is irrelevant
        _mux_ry_rec(c, controls[:-1], target, plus)
        return
    _mux_ry_rec(c, controls[:-1], target, plus)
    c.cx(msb, target)
    _mux_ry_rec(c, controls[:-1], target, minus)
    c.cx(msb, target)


def cqsp_multiplexor(ctrl, targets, amplitude_table, circuit: Circuit | None = None,
                     num_qubits: int | None = None) -> Circuit:
    """Controlled state preparation: |x>|0^m> -> |x>|psi_x> where psi_x is
    row x of the (2^c x 2^m) nonnegative-real amplitude table. Binary tree
    of multiplexed Y rotations (targets[0] = least significant)."""
    ctrl = list(ctrl)
    targets = list(targets)
    cbits, m = len(ctrl), len(targets)
    table = np.asarray(amplitude_table, dtype=float)
    if table.shape != (1 << cbits, 1 << m):
        raise ValueError("amplitude table shape mismatch")
    norms = np.linalg.norm(table, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-9:
        raise ValueError("non-normalized amplitude row")
    if np.min(table) < -1e-12:
        raise ValueError("amplitudes must be nonnegative real")
    if circuit is None:
        all_q = ctrl + targets
        nq = num_qubits if num_qubits is not None else max(all_q) + 1
        circuit = Circuit(nq)
    c = circuit
    # peel target bits from most significant to least: at step with
    # prefix-bits already set, rotate the next bit by the conditional
    # probability of its subtree mass.
    for bit in range(m - 1, -1, -1):
        done = m - 1 - bit  # higher bits already prepared
        # angle table indexed by (ctrl value x, prepared high bits p)
        mux_controls = ctrl + targets[bit + 1:]
        n_idx = 1 << (cbits + done)
        angles = np.zeros(n_idx)
        for x in range(1 << cbits):
            row = table[x].reshape((1 << done, 1 << (bit + 1))) if done else \
                table[x].reshape((1, 1 << (bit + 1)))
            # row[p, low] where p = already-fixed high bits (bit order:
            # targets[m-1..bit+1]), low = remaining bits incl. current
            for p in range(1 << done):
                mass = float(np.sum(row[p] ** 2))
                hi = float(np.sum(row[p, 1 << bit:] ** 2))
                if mass < 1e-24:
                    theta = 0.0
                else:
                    ratio = min(max(hi / mass, 0.0), 1.0)
                    theta = 2.0 * math.asin(math.sqrt(ratio))
                angles[(p << cbits) | x] = theta
        mux_ry(mux_controls, targets[bit], angles, c)
    return c
