import itertools
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionforge import (
    AlgebraId,
    CapacityError,
    DomainError,
    central_charge,
    color,
    conformal_weight,
    conjugate,
    enumerate_weights,
    orbit,
    parse_weight,
    simple_current,
    spin,
    su,
)
from fusionforge.kacmoody import comarks, dual_coxeter, root_system


def brute_force_weights(series, rank, level):
    marks = comarks(AlgebraId(series, rank, level))
    return sorted(t for t in itertools.product(range(level + 1), repeat=rank)
                  if sum(a * m for a, m in zip(t, marks)) <= level)


@pytest.mark.parametrize("series,rank,level,count", [
    ("A", 1, 8, 9), ("A", 1, 1, 2), ("A", 4, 5, 126), ("A", 3, 6, comb(9, 3)),
])
def test_weight_counts(series, rank, level, count):
    ws = enumerate_weights(AlgebraId(series, rank, level))
    assert len(ws) == count
    assert ws[0].is_vacuum


@pytest.mark.parametrize("alg", [su(4, 6), su(5, 5), spin(8, 2), spin(12, 2)])
def test_enumeration_matches_brute_force(alg):
    labels = [w.labels for w in enumerate_weights(alg)]
    assert labels == brute_force_weights(alg.series, alg.rank, alg.level)


def test_enumeration_cap():
    with pytest.raises(CapacityError):
        enumerate_weights(su(5, 5), cap=100)


@pytest.mark.parametrize("series,rank", [("A", 0), ("D", 2), ("B", 3)])
def test_invalid_algebra(series, rank):
    with pytest.raises(DomainError):
        AlgebraId(series, rank, 1)


def test_invalid_weight(su5_5):
    with pytest.raises(DomainError):
        parse_weight(su5_5, "3,3,0,0")
    with pytest.raises(DomainError):
        parse_weight(su5_5, "1,0,0")


@pytest.mark.parametrize("series,rank", [("A", 1), ("A", 4), ("A", 6), ("D", 4), ("D", 6)])
def test_root_system_invariants(series, rank):
    R = root_system(series, rank)
    assert len(R.root_matrix) == (R.dimension - rank) // 2
    # (rho, alpha_i^vee) = 1 for simply laced algebras is (rho, alpha_i) = 1
    rho = [1] * rank
    for i in range(rank):
        e = [0] * rank
        e[i] = 1
        simple_root = R.root_matrix[[tuple(r) for r in R.root_matrix.tolist()].index(tuple(e))]
        assert simple_root.sum() == 1
    assert R.dual_coxeter == (rank + 1 if series == "A" else 2 * rank - 2)


@pytest.mark.parametrize("w,expected", [("0,0,0,0", 0), ("1,0,0,0", 1), ("1,0,0,1", 0)])
def test_color(su5_5, w, expected):
    assert color(parse_weight(su5_5, w)) == expected


def test_color_rejects_type_d():
    with pytest.raises(DomainError):
        color(enumerate_weights(spin(12, 5))[1])


def test_simple_current_examples(su5_5):
    vac = parse_weight(su5_5, "0,0,0,0")
    assert simple_current(vac).labels == (5, 0, 0, 0)
    assert len(orbit(parse_weight(su5_5, "0,1,0,2"))) == 5


def test_simple_current_properties(su5_5):
    for w in enumerate_weights(su5_5):
        assert simple_current(w, 5) == w
        s = simple_current(w)
        assert sum(s.labels) <= 5
        assert color(s) == (color(w) + 5) % 5
        assert 5 % len(orbit(w)) == 0


@pytest.mark.parametrize("alg", [su(4, 6), su(5, 5)])
def test_conjugation(alg):
    ws = enumerate_weights(alg)
    assert sorted(conjugate(w).labels for w in ws) == sorted(w.labels for w in ws)
    for w in ws:
        assert conjugate(conjugate(w)) == w
        assert conformal_weight(conjugate(w)) == conformal_weight(w)


def test_conjugate_examples(su5_5):
    assert conjugate(parse_weight(su5_5, "1,0,0,0")).labels == (0, 0, 0, 1)
    assert conjugate(parse_weight(su5_5, "1,0,0,1")).labels == (1, 0, 0, 1)


@given(st.integers(1, 30), st.data())
@settings(max_examples=50, deadline=None)
def test_conformal_weight_su2_closed_form(k, data):
    lam = data.draw(st.integers(0, k))
    w = parse_weight(su(2, k), str(lam))
    assert conformal_weight(w) == Fraction(lam * (lam + 2), 4 * (k + 2))


@pytest.mark.parametrize("alg,w,h", [
    (su(2, 8), "0", 0), (su(2, 8), "8", 2), (su(5, 5), "5,0,0,0", 2), (su(2, 8), "2", Fraction(1, 5)),
])
def test_conformal_weight_examples(alg, w, h):
    assert conformal_weight(parse_weight(alg, w)) == h


def test_conformal_weight_kLambda_j(su5_5):
    # h(k Lambda_j) = k j (n - j) / (2 n)
    for j in range(1, 5):
        labels = [0] * 4
        labels[j - 1] = 5
        w = parse_weight(su5_5, ",".join(map(str, labels)))
        assert conformal_weight(w) == Fraction(5 * j * (5 - j), 10)


@pytest.mark.parametrize("alg,c", [(su(7, 7), 24), (su(5, 5), 12), (spin(12, 5), 22), (su(2, 1), 1)])
def test_central_charge(alg, c):
    assert central_charge(alg) == c


def test_dual_coxeter():
    assert dual_coxeter(su(7, 1)) == 7
    assert dual_coxeter(spin(12, 1)) == 10


def test_weight_string_roundtrip(su5_5):
    for w in enumerate_weights(su5_5)[:20]:
        assert parse_weight(su5_5, str(w)) == w
        assert parse_weight(su5_5, w.labels) == w
