import itertools
import math

import numpy as np
import pytest

from fusionforge import (
    CapacityError,
    DomainError,
    color,
    conjugate,
    enumerate_weights,
    fibonacci_ring,
    modular_invariants,
    mu_index,
    parse_weight,
    pointed_ring,
    quantum_dimension_weyl,
    quantum_dimensions_weyl,
    s_matrix,
    spin,
    su,
    t_matrix,
)
from fusionforge.modular import charge_conjugation_defect, quantum_dimension_s


def su2_s_oracle(k):
    n = k + 1
    a = np.arange(1, n + 1)
    return np.sqrt(2 / (k + 2)) * np.sin(np.outer(a, a) * np.pi / (k + 2))


@pytest.mark.parametrize("k", [1, 2, 5, 8])
def test_su2_closed_form(k):
    S = s_matrix(su(2, k))
    assert np.max(np.abs(S.entries - su2_s_oracle(k))) < 1e-12


@pytest.mark.parametrize("alg", [su(2, 8), su(3, 4), su(4, 6), su(5, 5)])
def test_unitary_symmetric_positive(alg):
    S = s_matrix(alg)
    assert S.unitarity_defect() < 1e-9
    assert S.symmetry_defect() < 1e-9
    assert (S.entries[0].real > 0).all()


@pytest.mark.parametrize("alg", [su(4, 6), su(5, 5)])
def test_charge_conjugation(alg):
    S = s_matrix(alg)
    assert charge_conjugation_defect(S) < 1e-9
    S2 = (S.entries @ S.entries).real
    for i, w in enumerate(S.weights):
        assert abs(S2[i, S.index(conjugate(w))] - 1) < 1e-9


def test_s_matrix_rejects_type_d():
    with pytest.raises(DomainError):
        s_matrix(spin(12, 2))


@pytest.mark.slow
def test_su7_7_vector_dimension():
    S = s_matrix(su(7, 7))
    v = parse_weight(su(7, 7), "1,0,0,0,0,0")
    assert abs(quantum_dimension_s(S, v) - 1 / math.sin(math.pi / 14)) < 1e-9
    assert abs(quantum_dimension_s(S, v) - 4.493959) < 1e-6


def test_dimension_label2_su2_8(su2_8):
    S = s_matrix(su2_8)
    w = parse_weight(su2_8, "4")
    assert abs(quantum_dimension_s(S, w) - (1 + math.sqrt(5))) < 1e-9
    assert quantum_dimension_s(S, S.weights[0]) == 1


@pytest.mark.parametrize("alg", [su(4, 6), su(5, 5), su(2, 8)])
def test_weyl_and_s_routes_agree(alg):
    S = s_matrix(alg)
    assert np.max(np.abs(quantum_dimensions_weyl(alg) - S.dimensions)) < 1e-9


def test_weyl_dimension_vacuum_is_one():
    for alg in (su(3, 2), spin(8, 3), spin(12, 5)):
        assert abs(quantum_dimension_weyl(enumerate_weights(alg)[0]) - 1) < 1e-12


@pytest.mark.parametrize("n,k", [(4, 1), (5, 3), (6, 2), (6, 5)])
def test_spin_vector_dimension_closed_form(n, k):
    # so(2n)_k vector: 1 + [2n - 1]_q with q = exp(i pi / (k + 2n - 2))
    kappa = k + 2 * n - 2
    oracle = 1 + math.sin((2 * n - 1) * math.pi / kappa) / math.sin(math.pi / kappa)
    w = parse_weight(spin(2 * n, k), ",".join(["1"] + ["0"] * (n - 1)))
    assert quantum_dimension_weyl(w) == pytest.approx(oracle, abs=1e-12)


def test_spin12_5_spinor_dimension():
    # the spinor weight carries d = 7.7396813; the vector carries a smaller value
    alg = spin(12, 5)
    assert abs(quantum_dimension_weyl(parse_weight(alg, "0,0,0,0,0,1")) - 7.7396813) < 1e-6
    assert quantum_dimension_weyl(parse_weight(alg, "1,0,0,0,0,0")) < 7.7


def test_mu_index_routes(su2_8):
    S = s_matrix(su2_8)
    oracle = sum(math.sin((j + 1) * math.pi / 10) ** 2 for j in range(9)) / math.sin(math.pi / 10) ** 2
    assert abs(mu_index(S) - oracle) < 1e-9
    assert abs(mu_index(su2_8) - 52.360680) < 1e-4
    assert abs(mu_index(S) - 1 / S.entries[0, 0].real ** 2) < 1e-9


@pytest.mark.parametrize("m", [1, 2, 5, 10])
def test_mu_index_pointed(m):
    assert abs(mu_index(pointed_ring("Z", m)) - m) < 1e-12


def test_mu_index_color_classes(su5_5):
    d = quantum_dimensions_weyl(su5_5)
    zero = sum(di**2 for di, w in zip(d, enumerate_weights(su5_5)) if color(w) == 0)
    assert abs(5 * zero - mu_index(su5_5)) < 1e-6 * mu_index(su5_5)


def test_t_matrix(su5_5):
    T = t_matrix(su5_5)
    assert np.max(np.abs(np.abs(T.diagonal) - 1)) < 1e-12


def brute_force_invariants(S, T, max_entry):
    """All symmetric-free non-negative Z with Z_00 = 1 commuting with S and T, by exhaustion."""
    n = S.size
    Tm = T.diagonal
    free = [(i, j) for i in range(n) for j in range(n) if abs(Tm[i] - Tm[j]) < 1e-9]
    out = []
    for vals in itertools.product(range(max_entry + 1), repeat=len(free)):
        Z = np.zeros((n, n), dtype=np.int64)
        for (i, j), v in zip(free, vals):
            Z[i, j] = v
        if Z[0, 0] != 1:
            continue
        if np.max(np.abs(S.entries @ Z - Z @ S.entries)) < 1e-6:
            out.append(Z)
    return out


def _key(Zs):
    return sorted(Z.tobytes() for Z in Zs)


def test_invariants_su2_4_against_brute_force():
    alg = su(2, 4)
    S, T = s_matrix(alg), t_matrix(alg)
    Zs = modular_invariants(S, T, max_entry=2)
    assert len(Zs) == 2
    assert _key(Zs) == _key(brute_force_invariants(S, T, 2))
    assert any(np.array_equal(Z, np.eye(5, dtype=np.int64)) for Z in Zs)


def test_invariants_su2_8_contains_z2_block(su2_8):
    Zs = modular_invariants(s_matrix(su2_8), t_matrix(su2_8))
    assert any(np.array_equal(Z, np.eye(9, dtype=np.int64)) for Z in Zs)
    rows = [tuple(np.flatnonzero(Z[0])) for Z in Zs]
    assert (0, 8) in rows


@pytest.mark.parametrize("k,count", [(10, 3), (16, 3), (28, 3)])
def test_invariants_su2_ade(k, count):
    # A, D and E type: (A11, D7, E6), (A17, D10, E7), (A27, D16, E8)
    alg = su(2, k)
    Zs = modular_invariants(s_matrix(alg), t_matrix(alg), max_entry=2, max_dim=64)
    assert len(Zs) == count


def test_invariants_capacity():
    alg = su(2, 16)
    with pytest.raises(CapacityError):
        modular_invariants(s_matrix(alg), t_matrix(alg), max_dim=2)


def test_invariants_reject_mismatched_t():
    with pytest.raises(DomainError):
        modular_invariants(s_matrix(su(2, 4)), t_matrix(su(2, 5)))
