import itertools
import math

import numpy as np
import pytest

from dickesynth.circuit import ConnectivityGraph, asap_layering, validate_connectivity
from dickesynth.unary import (DivideSpec, dicke_unitary_path,
                              divide_unitary_path, hyper_weights,
                              unary_amplitude_prep)
from dickesynth.verify import dicke_reference, fidelity, simulate


def unary_index(ell, n):
    return (1 << ell) - 1


# --- Dicke unitary on the path ------------------------------------------------


def test_dicke_path_bell():
    c = dicke_unitary_path(2, 1)
    out = simulate(c, unary_index(1, 2))
    target = np.zeros(4, dtype=complex)
    target[0b01] = target[0b10] = 1 / math.sqrt(2)
    assert fidelity(out, target) > 1 - 1e-10


def test_dicke_path_uniform_weight_two():
    c = dicke_unitary_path(4, 2)
    out = simulate(c, unary_index(2, 4))
    for idx in range(16):
        want = 1 / math.sqrt(6) if bin(idx).count("1") == 2 else 0.0
        assert abs(abs(out[idx]) - want) < 1e-9


@pytest.mark.parametrize("n,k", [(6, 3), (7, 3), (9, 4), (12, 5)])
def test_dicke_path_all_weights(n, k):
    c = dicke_unitary_path(n, k)
    for ell in range(k + 1):
        out = simulate(c, unary_index(ell, n))
        assert fidelity(out, dicke_reference(n, ell)) > 1 - 1e-10


@pytest.mark.parametrize("n,k", [(6, 3), (9, 4)])
def test_dicke_path_weight_conservation(n, k):
    c = dicke_unitary_path(n, k)
    for ell in range(k + 1):
        out = simulate(c, unary_index(ell, n))
        for idx in range(1 << n):
            if bin(idx).count("1") != ell:
                assert abs(out[idx]) < 1e-12


def test_dicke_path_connectivity_and_depth():
    for n, k in [(8, 4), (12, 3), (16, 5)]:
        c = dicke_unitary_path(n, k)
        assert validate_connectivity(c, ConnectivityGraph.path(n)) == []
        assert asap_layering(c).depth <= 25 * n
        assert c.size <= 12 * n * k


def test_dicke_path_rejects_bad_k():
    with pytest.raises(ValueError):
        dicke_unitary_path(4, 5)


# --- divide unitary on the path -----------------------------------------------


def spec_for(n, m, k):
    return DivideSpec(n=n, m=m, k=k, left=list(range(k)),
                      right=list(range(k, 2 * k)))


def test_divide_path_zero_weight_fixed():
    c = divide_unitary_path(spec_for(4, 2, 2))
    out = simulate(c, 0)
    assert abs(abs(out[0]) - 1.0) < 1e-12


def test_divide_path_small_coefficients():
    # n=4, m=2, k=2, l=2: sqrt(1/6)|00>|11> + sqrt(4/6)|01>|01> + sqrt(1/6)|11>|00>
    c = divide_unitary_path(spec_for(4, 2, 2))
    out = simulate(c, unary_index(2, 2) << 2)
    # left register = qubits 0..1, right = qubits 2..3; |S1>|S2> basis index
    # packs S1 in the low bits
    assert abs(out[0b1100] - math.sqrt(1 / 6)) < 1e-10
    assert abs(out[0b0101] - math.sqrt(4 / 6)) < 1e-10
    assert abs(out[0b0011] - math.sqrt(1 / 6)) < 1e-10


def test_divide_path_nine_four():
    # n=9, m=4, k=2, l=1: sqrt(4/9)|01>|00> + sqrt(5/9)|00>|01>
    c = divide_unitary_path(spec_for(9, 4, 2))
    out = simulate(c, unary_index(1, 2) << 2)
    assert abs(out[0b0001] - math.sqrt(4 / 9)) < 1e-10
    assert abs(out[0b0100] - math.sqrt(5 / 9)) < 1e-10


def test_hyper_weights_match_binomials():
    for n in range(2, 13):
        for k in range(1, 5):
            for m in range(k, n - k + 1):
                for ell in range(k + 1):
                    w = hyper_weights(n, m, k, ell)
                    for i in range(ell + 1):
                        want = math.sqrt(math.comb(m, i)
                                         * math.comb(n - m, ell - i)
                                         / math.comb(n, ell))
                        assert abs(w[i] - want) < 1e-12


@pytest.mark.parametrize("n,m,k", [(4, 2, 2), (6, 3, 2), (8, 4, 3),
                                   (9, 4, 2), (12, 6, 4), (10, 4, 3)])
def test_divide_path_matches_hypergeometric(n, m, k):
    c = divide_unitary_path(spec_for(n, m, k))
    for ell in range(k + 1):
        out = simulate(c, unary_index(ell, k) << k)
        w = hyper_weights(n, m, k, ell)
        for i in range(ell + 1):
            idx = unary_index(i, k) | (unary_index(ell - i, k) << k)
            assert abs(out[idx] - w[i]) < 1e-10
        assert abs(np.linalg.norm(out) - 1.0) < 1e-10


def test_divide_path_connectivity_depth_size():
    # path layout is S2 then S1, so the right register owns the low positions
    for n, m, k in [(12, 6, 4), (16, 8, 5)]:
        c = divide_unitary_path(DivideSpec(n=n, m=m, k=k,
                                           left=list(range(k, 2 * k)),
                                           right=list(range(k))))
        assert validate_connectivity(c, ConnectivityGraph.path(2 * k)) == []
        assert asap_layering(c).depth <= 200 * k
        assert c.size <= 32 * k * k


def test_divide_path_unitary_image_orthonormal():
    k = 2
    c = divide_unitary_path(spec_for(6, 3, k))
    images = [simulate(c, idx) for idx in range(1 << (2 * k))]
    gram = np.array([[np.vdot(a, b) for b in images] for a in images])
    assert np.allclose(gram, np.eye(1 << (2 * k)), atol=1e-9)


def test_divide_spec_validation():
    with pytest.raises(ValueError):
        DivideSpec(n=4, m=1, k=2, left=[0, 1], right=[2, 3])
    with pytest.raises(ValueError):
        DivideSpec(n=6, m=3, k=2, left=[0, 1], right=[1, 2])


# --- unary amplitude preparation ------------------------------------------------


def test_unary_prep_trivial():
    c = unary_amplitude_prep(3, [1.0, 0.0, 0.0, 0.0])
    out = simulate(c, 0)
    assert abs(abs(out[0]) - 1.0) < 1e-10


def test_unary_prep_single_rotation():
    c = unary_amplitude_prep(1, [1 / math.sqrt(2), 1 / math.sqrt(2)])
    out = simulate(c, 0)
    assert abs(out[0] - 1 / math.sqrt(2)) < 1e-9
    assert abs(out[1] - 1 / math.sqrt(2)) < 1e-9


@pytest.mark.parametrize("k", [2, 3, 5, 8])
def test_unary_prep_random_amplitudes(k):
    rng = np.random.default_rng(k)
    for _ in range(5):
        a = rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1)
        a /= np.linalg.norm(a)
        c = unary_amplitude_prep(k, a)
        out = simulate(c, 0)
        target = np.zeros(1 << k, dtype=complex)
        for ell in range(k + 1):
            target[unary_index(ell, k)] = a[ell]
        assert fidelity(out, target) > 1 - 1e-9
        assert validate_connectivity(c, ConnectivityGraph.path(k)) == []


def test_unary_prep_depth_linear():
    for k in (8, 16, 32):
        d = asap_layering(unary_amplitude_prep(k, _point_mass(k))).depth
        assert d <= 8 * k


def _point_mass(k):
    a = np.zeros(k + 1)
    a[k] = 1.0
    return a


def test_unary_prep_rejects_unnormalized():
    with pytest.raises(ValueError):
        unary_amplitude_prep(2, [1.0, 1.0, 0.0])
