"""Deriving the SU(4)_6 < SU(10)_1 spectrum from modular invariants.

The spectrum is not listed in closed form, so it is recovered in steps:

1. search the physical modular invariants of SU(4)_6;
2. factor a type I invariant as Z = b^T b to get the branching rows;
3. rebuild the Z10 fusion of SU(10)_1 from those rows;
4. decompose alpha of the second fundamental weight.

    python3 demos/su4_6_su10_1.py
"""
import numpy as np

from fusionforge import (
    ExtensionSpec,
    FactorizationError,
    ambient_from_branching,
    branching_from_invariant,
    decompose_induction,
    fusion_graph,
    modular_invariants,
    s_matrix,
    su,
    t_matrix,
    verlinde_ring,
)
from fusionforge.extension import name_cyclic

alg = su(4, 6)
S, R = s_matrix(alg), verlinde_ring(alg)
Zs = modular_invariants(S, t_matrix(alg), max_entry=3)
print(f"{alg}: {len(Zs)} physical invariants with entries <= 3")

for Z in Zs:
    vac = [str(S.weights[j]) for j in np.flatnonzero(Z[0])]
    if len(vac) == 1:
        continue
    try:
        rows = branching_from_invariant(S, Z)
    except FactorizationError:
        print("skipping a non type I invariant with vacuum row", vac)
        continue
    if len(rows) != 10:
        continue
    print("vacuum row:", " + ".join(f"[{w}]" for w in vac))
    amb = ambient_from_branching(S, rows, [f"x{i}" for i in range(len(rows))])
    w = next(i for i, r in enumerate(rows) if r.multiplicity("2,0,0"))
    names = name_cyclic(amb, w, "w")
    amb = ambient_from_branching(S, rows, names)
    for n, r in zip(names, rows):
        print(f"  {n:5s} <- {r}")
    spec = ExtensionSpec(R, rows[0], sectors={n: r for n, r in zip(names, rows) if n != "1"}, ambient=amb)
    rep = decompose_induction(spec, ["0,1,0"])
    a = rep.alpha("0,1,0")
    print("\n[alpha_L2] =", a, f"(d = {a.dimension():.7g})")
    print("[alpha_L2]^2 =", a * a)
    g = fusion_graph(rep.ring, str(a)[1:-1])
    print("fusion graph of alpha_L2:", len(g.labels), "vertices,", g.edge_count, "edges")
    break
