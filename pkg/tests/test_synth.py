import math

import numpy as np
import pytest

from dickesynth.circuit import (ConnectivityGraph, asap_layering,
                                validate_connectivity)
from dickesynth.synth import (SynthesisPlan, divide_unitary_ancilla,
                              prepare_dicke, prepare_symmetric,
                              synth_alltoall, synth_grid)
from dickesynth.unary import DivideSpec, divide_unitary_path, hyper_weights
from dickesynth.verify import dicke_reference, fidelity, simulate


def unary_index(ell, k):
    return (1 << ell) - 1


# --- ancilla-accelerated divide unitary ---------------------------------------


def aa_spec(n, m, k):
    return DivideSpec(n=n, m=m, k=k, left=list(range(k)),
                      right=list(range(k, 2 * k)))


def test_divide_ancilla_zero_weight_identity():
    c = divide_unitary_ancilla(aa_spec(8, 4, 2), range(4, 12), num_qubits=12)
    out = simulate(c, 0)
    assert abs(abs(out[0]) - 1.0) < 1e-10


def test_divide_ancilla_eight_four_two():
    # amplitudes sqrt(C(4,i) C(4,2-i) / C(8,2)) = sqrt(6/28), sqrt(16/28), sqrt(6/28)
    k, N = 2, 8
    c = divide_unitary_ancilla(aa_spec(8, 4, k), range(2 * k, 2 * k + N),
                               num_qubits=2 * k + N)
    out = simulate(c, unary_index(2, k) << k)
    want = [math.sqrt(6 / 28), math.sqrt(16 / 28), math.sqrt(6 / 28)]
    for i, w in enumerate(want):
        idx = unary_index(i, k) | (unary_index(2 - i, k) << k)
        assert abs(out[idx] - w) < 1e-9
    assert abs(np.linalg.norm(out) - 1.0) < 1e-10


@pytest.mark.parametrize("n,m,k", [(6, 3, 2), (8, 4, 3), (10, 5, 3),
                                   (9, 6, 3), (10, 4, 2)])
def test_divide_ancilla_matches_path_variant(n, m, k):
    N = 3 * k + 2
    nq = 2 * k + N
    c_anc = divide_unitary_ancilla(aa_spec(n, m, k), range(2 * k, nq),
                                   num_qubits=nq)
    c_path = divide_unitary_path(aa_spec(n, m, k))
    for ell in range(k + 1):
        idx = unary_index(ell, k) << k
        a = simulate(c_anc, idx)
        p = simulate(c_path, idx)
        # ancilla must come back clean: all amplitude in the low 2k qubits
        folded = a.reshape(-1, 1 << (2 * k)).sum(axis=0)
        assert abs(np.linalg.norm(a.reshape(-1, 1 << (2 * k))[0]) - 1) < 1e-9
        assert fidelity(folded, p) > 1 - 1e-9


def test_divide_ancilla_small_budget_delegates_to_conveyor():
    # N < 2k: same unitary as the path conveyor, gate for gate
    k = 2
    spec = aa_spec(6, 3, k)
    c_small = divide_unitary_ancilla(spec, range(2 * k, 2 * k + 1),
                                     num_qubits=2 * k + 1)
    c_path = divide_unitary_path(spec)
    for ell in range(k + 1):
        a = simulate(c_small, unary_index(ell, k) << k)
        p = simulate(c_path, unary_index(ell, k) << k)
        assert fidelity(a.reshape(2, -1)[0], p) > 1 - 1e-10


# --- all-to-all synthesis ------------------------------------------------------


def test_alltoall_bell():
    c, _ = synth_alltoall(2, 1)
    out = simulate(c, 0b01)
    assert fidelity(out, dicke_reference(2, 1)) > 1 - 1e-10


@pytest.mark.parametrize("n,k", [(12, 2), (10, 3), (9, 4), (14, 2)])
def test_alltoall_all_weights(n, k):
    c, _ = synth_alltoall(n, k)
    for ell in range(k + 1):
        out = simulate(c, unary_index(ell, n))
        assert fidelity(out, dicke_reference(n, ell)) > 1 - 1e-8


def test_alltoall_plan_structure():
    n, k = 16, 2
    c, plan = synth_alltoall(n, k)
    assert isinstance(plan, SynthesisPlan)
    assert c.num_qubits == n  # only data qubits, idle ones double as ancilla
    per_layer = {}
    for node in plan.recursion_tree:
        per_layer.setdefault(node.layer, []).append(node)
        assert node.n_node > 2 * k  # recursion stops at blocks of <= 2k
    for layer, nodes in per_layer.items():
        assert len(nodes) <= 2 ** (layer - 1)
    assert all(len(unit) <= 2 * k for unit in plan.tail_units)
    assert "plan topology=complete" in plan.report()


def test_alltoall_large_k_delegates_to_ladder():
    c, plan = synth_alltoall(8, 3)  # k > n/4
    assert plan.recursion_tree == []
    for ell in range(4):
        out = simulate(c, unary_index(ell, 8))
        assert fidelity(out, dicke_reference(8, ell)) > 1 - 1e-8


def test_alltoall_size_linear_in_nk():
    for n, k in [(64, 2), (128, 4), (256, 8)]:
        c, _ = synth_alltoall(n, k)
        assert c.size <= 600 * n * k


def test_alltoall_rejects_bad_k():
    with pytest.raises(ValueError):
        synth_alltoall(8, 5)
    with pytest.raises(ValueError):
        synth_alltoall(8, 0)


# --- grid synthesis -------------------------------------------------------------


def test_grid_smallest():
    c, _ = synth_grid(2, 2, 1)
    g = ConnectivityGraph.grid(2, 2)
    assert validate_connectivity(c, g) == []
    out = simulate(c, 0b0001)
    assert fidelity(out, dicke_reference(4, 1)) > 1 - 1e-8


@pytest.mark.parametrize("n1,n2,k", [(3, 4, 2), (2, 3, 1), (2, 7, 3)])
def test_grid_case1_fidelity_and_connectivity(n1, n2, k):
    c, _ = synth_grid(n1, n2, k)
    g = ConnectivityGraph.grid(n1, n2)
    assert validate_connectivity(c, g) == []
    n = n1 * n2
    for ell in range(k + 1):
        out = simulate(c, unary_index(ell, n))
        assert fidelity(out, dicke_reference(n, ell)) > 1 - 1e-8


def test_grid_case2_column_sweep():
    # k < n2/n1 exercises the serialized column sweep
    c, _ = synth_grid(2, 8, 1)
    g = ConnectivityGraph.grid(2, 8)
    assert validate_connectivity(c, g) == []
    for ell in (0, 1):
        out = simulate(c, unary_index(ell, 16))
        assert fidelity(out, dicke_reference(16, ell)) > 1 - 1e-8


def test_grid_case2_depth_linear_in_n2():
    depths = []
    for n2 in (8, 16, 32):
        c, _ = synth_grid(2, n2, 1)
        depths.append(asap_layering(c).depth / n2)
    assert max(depths) <= 1.5 * min(depths) + 10


def test_path_topology_is_one_row_grid():
    c, _ = synth_grid(1, 8, 2)
    assert validate_connectivity(c, ConnectivityGraph.path(8)) == []
    for ell in range(3):
        out = simulate(c, unary_index(ell, 8))
        assert fidelity(out, dicke_reference(8, ell)) > 1 - 1e-8


# --- state preparation front ends -----------------------------------------------


def test_prepare_dicke_bell():
    c = prepare_dicke("complete", 2, 1)
    out = simulate(c, 0)
    assert fidelity(out, dicke_reference(2, 1)) > 1 - 1e-10


def test_prepare_dicke_ten_five():
    c = prepare_dicke("complete", 10, 5)
    out = simulate(c, 0)
    amp = 1 / math.sqrt(252)
    for idx in range(1 << 10):
        want = amp if bin(idx).count("1") == 5 else 0.0
        assert abs(abs(out[idx]) - want) < 1e-8


def test_prepare_dicke_grid_uniform():
    c = prepare_dicke("grid", (2, 3), 2)
    out = simulate(c, 0)
    amp = 1 / math.sqrt(15)
    for idx in range(1 << 6):
        want = amp if bin(idx).count("1") == 2 else 0.0
        assert abs(abs(out[idx]) - want) < 1e-8


def test_prepare_symmetric_point_mass_is_dicke():
    alpha = np.zeros(3)
    alpha[2] = 1.0
    c = prepare_symmetric("complete", 6, 2, alpha)
    out = simulate(c, 0)
    assert fidelity(out, dicke_reference(6, 2)) > 1 - 1e-8


def test_prepare_symmetric_three_term():
    alpha = np.full(3, 1 / math.sqrt(3))
    c = prepare_symmetric("complete", 6, 2, alpha)
    out = simulate(c, 0)
    target = sum(a * dicke_reference(6, ell) for ell, a in enumerate(alpha))
    assert fidelity(out, target) > 1 - 1e-8
    # permutation invariance: equal amplitude within each weight class
    for w in range(3):
        amps = [out[idx] for idx in range(64) if bin(idx).count("1") == w]
        assert max(abs(a - amps[0]) for a in amps) < 1e-9


def test_prepare_symmetric_rejects_unnormalized():
    with pytest.raises(ValueError):
        prepare_symmetric("complete", 6, 2, [1.0, 1.0, 0.0])
