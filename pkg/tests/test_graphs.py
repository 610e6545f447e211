import json
from pathlib import Path

import numpy as np
import pytest

from fusionforge import (
    BipartiteGraph,
    ClosureError,
    DomainError,
    EvenEnvironment,
    NumericalError,
    emit,
    fibonacci_ring,
    fusion_graph,
    induced_environment,
    pointed_ring,
    principal_graph,
    su,
    verlinde_ring,
)
from fusionforge.verify import rho_b1_graph, su2_8_report, su4_6_report

DATA = Path(__file__).parent / "data"
PHI = (1 + 5**0.5) / 2


def test_fusion_graph_cycle():
    g = fusion_graph(pointed_ring("Z", 10), "g")
    assert g.edge_count == 10
    for k, lab in enumerate(g.labels):
        assert list(g.successors(lab).values()) == [1]


def test_fusion_graph_a9(su2_8):
    g = fusion_graph(verlinde_ring(su2_8), "1")
    A = g.adjacency
    assert np.array_equal(A, A.T)
    assert A.sum() == 16
    assert all(A[i, i + 1] == 1 for i in range(8))


def test_fusion_graph_unknown_label():
    with pytest.raises(DomainError):
        fusion_graph(fibonacci_ring(), "sigma")


def test_fusion_graph_alpha_L2_loops():
    _, rep = su4_6_report()
    R = rep.ring
    al = R.label_str(R.labels[next(iter(rep.alpha("0,1,0").index_items()))[0]])
    g = fusion_graph(R, al)
    assert g.loops(al) == 0
    assert set(g.successors(al)) == {"1", *(f"{w}*{al}" for w in ("w", "w^3", "w^-1", "w^-3"))}


def test_trivial_principal_graph():
    g = principal_graph(fibonacci_ring(), "1")
    assert (len(g.even), len(g.odd), g.edge_count) == (1, 1, 1)
    dot = emit(g, "dot")
    assert dot == emit(principal_graph(fibonacci_ring(), "1"), "dot")
    assert dot.count("shape=") == 2


def test_fibonacci_a4():
    g = principal_graph(fibonacci_ring(), "tau")
    assert (len(g.even), len(g.odd), g.edge_count) == (2, 2, 3)
    assert g.norm_squared == pytest.approx(PHI**2, abs=1e-4)
    assert g.index == pytest.approx(2.618034, abs=1e-4)
    data = json.loads(emit(g, "json"))
    assert len(data["even"]) + len(data["odd"]) == 4 and len(data["edges"]) == 3


def test_rho_b1_second_fish():
    g = rho_b1_graph()
    assert len(g.even) == 5
    assert g.even == ["0", "2", "4", "6", "8"]
    assert abs(g.norm_squared - g.index) < 1e-4
    assert g.index == pytest.approx(2 * PHI**2, abs=1e-6)
    assert emit(g, "dot") == (DATA / "rho_b1.dot").read_text()


def test_depth_cap_independence():
    assert emit(rho_b1_graph(32), "dot") == emit(rho_b1_graph(64), "dot")
    F = fibonacci_ring()
    assert emit(principal_graph(F, "tau", depth_cap=32), "dot") == emit(principal_graph(F, "tau", depth_cap=64), "dot")


def test_depth_cap_exceeded(su2_8):
    with pytest.raises(ClosureError):
        principal_graph(verlinde_ring(su2_8), "1", depth_cap=1)


def test_su2_principal_graph_norm(su2_8):
    g = principal_graph(verlinde_ring(su2_8), "1")
    assert g.norm_squared == pytest.approx(4 * np.cos(np.pi / 10) ** 2, abs=1e-9)


def test_bipartite_validation():
    with pytest.raises(DomainError):
        BipartiteGraph(["a", "b"], ["x"], [[1], [0]])
    with pytest.raises(NumericalError):
        BipartiteGraph(["a"], ["x"], [[1]], index=2.0)


def test_even_environment_requires_vacuum(su2_8):
    R = verlinde_ring(su2_8)
    with pytest.raises(DomainError):
        EvenEnvironment(R, R.sector("2"))


def test_induced_environment_kbar_kappa():
    st, rep = su2_8_report()
    env = induced_environment(rep, "b1", "rho b1")
    # kbar kappa = bar iota (1 + b1) iota = [0] + [4] + [8]
    assert env.kbar_kappa == rep.spec.base.sector("0", "4", "8")
    assert env.index == pytest.approx(2 + 2 * PHI, abs=1e-9)


def test_emit_rejects_unknown_format():
    with pytest.raises(DomainError):
        emit(principal_graph(fibonacci_ring(), "tau"), "svg")
