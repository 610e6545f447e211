import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from fusionforge import CapacityError, DomainError, Permutation, build, closure, load_config, normality_check
from fusionforge import pairing_to_permutation
from fusionforge.verify import OUT_ORDER, out_group_orders


def test_five_cycle_not_transitive():
    G = closure([Permutation.from_cycles(6, (0, 1, 2, 3, 4))])
    assert G.order == 5
    assert not G.is_transitive


def test_symmetric_group():
    G = closure([Permutation.from_cycles(6, (0, 1, 2, 3, 4)), Permutation.from_cycles(6, (4, 5))])
    assert G.order == 720
    assert G.is_transitive


def test_capacity():
    with pytest.raises(CapacityError):
        closure([Permutation.identity(13)])


def test_not_a_bijection():
    with pytest.raises(DomainError):
        Permutation((0, 0, 1))
    with pytest.raises(DomainError):
        pairing_to_permutation({"a": "b", "b": "b"}, ["a", "b"])


def test_identity_pairing():
    assert pairing_to_permutation({x: x for x in OUT_ORDER}, OUT_ORDER).is_identity()


def test_no9_and_no67_pairings():
    F1 = normality_check(build("no9_a1a1").stage().spec).pairing
    P1 = pairing_to_permutation({k: F1[k] for k in OUT_ORDER}, OUT_ORDER)
    assert P1(OUT_ORDER.index("b1")) == OUT_ORDER.index("ad")
    F2 = normality_check(build("no67_a1a1").stage().spec).pairing
    assert pairing_to_permutation({k: F2[k] for k in OUT_ORDER}, OUT_ORDER).is_identity()


def test_tau_is_substituted():
    cfg = load_config("no9_a1a1", tau=[2, 1, 3, 4, 5])
    F1 = normality_check(build(cfg).stage().spec).pairing
    assert F1["ad"] == "b2"


def test_out_bound_over_all_tau():
    rows = out_group_orders()
    assert len(rows) == 120
    assert min(order for _, order, _ in rows) >= 60
    assert all(trans for *_, trans in rows)
    for _, order, _ in rows:
        assert 720 % order == 0 and order % 6 == 0


perms = st.permutations(range(6)).map(lambda p: Permutation(tuple(p)))


@given(st.lists(perms, min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_closure_properties(gens):
    G = closure(gens)
    assert math.factorial(6) % G.order == 0
    for g in gens:
        assert G.order % g.order() == 0
        assert g in G
    if G.is_transitive:
        assert G.order % 6 == 0


@given(perms, perms)
def test_composition_and_inverse(p, q):
    assert (p * q)(0) == p(q(0))
    assert (p * p.inverse()).is_identity()
