import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionforge import (
    AxiomError,
    DomainError,
    IntegralityError,
    RingMismatchError,
    Sector,
    TableRing,
    color,
    fibonacci_ring,
    inner_product,
    mu_index,
    pointed_ring,
    product_ring,
    simple_current,
    su,
    table_ring,
    verlinde_ring,
    weight_ring,
)
from fusionforge.fusionring import multiply, spin_level_one, su_level_one, verlinde_coefficient


def su2_fusion_oracle(k, a, b):
    """Truncated Clebsch-Gordan rule for SU(2)_k in Dynkin labels."""
    return [c for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2)]


def test_verlinde_matches_su2_oracle(su2_8):
    R = verlinde_ring(su2_8)
    for a, b in itertools.product(range(9), repeat=2):
        expected = np.zeros(9, dtype=np.int64)
        expected[su2_fusion_oracle(8, a, b)] = 1
        assert np.array_equal(R.fuse(a, b), expected)


def test_multiply_matches_coefficients(su2_8):
    R = verlinde_ring(su2_8)
    for a, b in itertools.product(range(9), repeat=2):
        prod = R.simple(str(a)) * R.simple(str(b))
        for c in range(9):
            assert prod.multiplicity(str(c)) == verlinde_coefficient(R, str(a), str(b), str(c))


def test_su2_8_label2_squared(su2_8):
    R = verlinde_ring(su2_8)
    x = R.simple("4")
    assert x * x == R.sector("0", "2", "4", "6", "8")
    assert verlinde_coefficient(R, "4", "4", "0") == 1
    assert verlinde_coefficient(R, "4", "4", "2") == 1
    assert inner_product(x * x, R.simple("0")) == 1


def test_adjoint_squared_su5_5(su5_5):
    R = verlinde_ring(su5_5)
    v0 = R.simple("1,0,0,1")
    expected = R.sector("0,0,0,0", ("1,0,0,1", 2), "2,0,0,2", "0,1,1,0", "0,1,0,2", "2,0,1,0")
    assert v0 * v0 == expected
    assert verlinde_coefficient(R, "1,0,0,1", "1,0,0,1", "1,0,0,1") == 2
    assert inner_product(v0 * v0, v0) == 2


def test_unit_law(su5_5):
    R = verlinde_ring(su5_5)
    for j in range(len(R)):
        e = np.zeros(len(R), dtype=np.int64)
        e[j] = 1
        assert np.array_equal(R.fuse(0, j), e)


def test_associativity_su2_8(su2_8):
    N = verlinde_ring(su2_8).tensor()
    assert np.array_equal(np.einsum("abs,scr->abcr", N, N), np.einsum("bcs,asr->abcr", N, N))


@pytest.mark.parametrize("alg", [su(4, 6), su(5, 5)])
def test_associativity_random(alg, rng):
    R = verlinde_ring(alg)
    for a, b, c in rng.integers(0, len(R), size=(60, 3)):
        left = (R.simple(int(a)) * R.simple(int(b))) * R.simple(int(c))
        right = R.simple(int(a)) * (R.simple(int(b)) * R.simple(int(c)))
        assert left == right


def test_color_additivity_su5_5(su5_5):
    R = verlinde_ring(su5_5)
    cols = np.array([color(w) for w in R.labels])
    for i, j in itertools.product(range(len(R)), repeat=2):
        hit = np.flatnonzero(R.fuse(i, j))
        assert ((cols[hit] - cols[i] - cols[j]) % 5 == 0).all()


def test_simple_current_automorphism(su5_5, rng):
    R = verlinde_ring(su5_5)
    sig = [R.index(simple_current(w)) for w in R.labels]
    for i, j in rng.integers(0, len(R), size=(80, 2)):
        row = R.fuse(int(i), int(j))
        shifted = R.fuse(sig[i], int(j))
        assert np.array_equal(shifted[sig], row)


@pytest.mark.parametrize("alg", [su(2, 8), su(4, 6), su(5, 5)])
def test_dimension_homomorphism(alg):
    R = verlinde_ring(alg)
    d = R.dims
    for i, j in itertools.product(range(len(R)), repeat=2):
        assert abs(R.fuse(i, j) @ d - d[i] * d[j]) < 1e-6 * max(1.0, d[i] * d[j])


def test_frobenius_moves(su5_5, rng):
    R = verlinde_ring(su5_5)
    for a, b, c in rng.integers(0, len(R), size=(50, 3)):
        lam, nu, mu = R.simple(int(a)), R.simple(int(b)), R.simple(int(c))
        assert inner_product(nu * lam, mu) == inner_product(lam, nu.conjugate() * mu)


def test_verlinde_integrality_guard(su2_8):
    R = verlinde_ring(su2_8)
    R2 = type(R)(R.S, tol=-1.0)  # a negative tolerance rejects every raw value
    with pytest.raises(IntegralityError):
        R2.fuse(1, 1)


def test_sector_basics(su2_8):
    R = verlinde_ring(su2_8)
    s = R.sector("2", ("4", 2))
    assert R.one * s == s
    assert s.dimension() == pytest.approx(R.dims[2] + 2 * R.dims[4])
    assert len(R.zero) == 0 and not R.zero
    with pytest.raises(DomainError):
        Sector(R, {0: -1})
    with pytest.raises(RingMismatchError):
        multiply(s, fibonacci_ring().one)


def test_type_d_weight_ring_has_no_fusion():
    from fusionforge import spin
    R = weight_ring(spin(12, 5))
    with pytest.raises(DomainError):
        R.simple("1,0,0,0,0,0") * R.simple("1,0,0,0,0,0")


def test_pointed_rings():
    k = pointed_ring("Z2xZ2")
    assert len(k) == 4
    for x in k.labels[1:]:
        assert k.simple(x) * k.simple(x) == k.one
    z = su_level_one(10)
    w = z.simple("w")
    assert w**10 == z.one and w**5 != z.one
    s24 = spin_level_one(24)
    assert len(s24) == 4
    assert s24.simple("sigma1") ** 2 == s24.one
    z4 = spin_level_one(10)
    assert z4.simple("sigma2") ** 2 == z4.simple("sigma1")


def test_fibonacci_validates():
    F = fibonacci_ring()
    t = F.simple("tau")
    assert t * t == F.one + t
    assert F.dims[1] == pytest.approx((1 + 5**0.5) / 2)


def test_table_ring_rejects_frobenius_violation():
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0] = np.eye(2, dtype=np.int64)
    N[:, 0] = np.eye(2, dtype=np.int64)
    N[1, 1] = [0, 1]  # x*x = x, so x has no dual
    with pytest.raises(AxiomError, match="Frobenius"):
        table_ring(["1", "x"], N, [1.0, 1.0])


def test_table_ring_rejects_nonassociative():
    # labels 1, a, b with a a = 1 + b, a b = a, b b = 1 breaks dimension consistency or associativity
    coeffs = {("1", x, x): 1 for x in "1ab"}
    coeffs.update({(x, "1", x): 1 for x in "ab"})
    coeffs.update({("a", "a", "1"): 1, ("a", "a", "b"): 1, ("a", "b", "a"): 1, ("b", "a", "a"): 1,
                   ("b", "b", "1"): 1, ("b", "b", "b"): 1})
    with pytest.raises(AxiomError):
        table_ring(["1", "a", "b"], coeffs)


def test_table_ring_json_roundtrip():
    F = fibonacci_ring()
    G = TableRing.from_json(F.to_json())
    assert G.labels == F.labels
    assert np.array_equal(G.N, F.N)
    data = json.loads(F.to_json())
    assert all(v > 0 for *_, v in data["N"])


def test_product_ring():
    k = pointed_ring("Z2xZ2")
    P = product_ring(k, k)
    assert len(P) == 16
    assert P.labels[0] == ("1", "1")
    assert P.one * P.simple(("sigma1", "sigma2")) == P.simple(("sigma1", "sigma2"))
    F = fibonacci_ring()
    assert mu_index(product_ring(F, F)) == pytest.approx(mu_index(F) ** 2, rel=1e-6)


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
@settings(max_examples=100, deadline=None)
def test_commutativity_su2_8(a, b, c):
    R = verlinde_ring(su(2, 8))
    assert R.fuse(a, b)[c] == R.fuse(b, a)[c]
    assert R.fuse(a, b)[c] == R.fuse(R.dual_index(a), c)[b]
