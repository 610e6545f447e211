"""SU(2)_8 and its Z2 simple-current extension.

Walks through the smallest example end to end.  The label 2 (Dynkin label
4) has quantum dimension 1+sqrt(5).  Its alpha-induction splits into two
Fibonacci-like sectors b1 and b2.  The subfactor rho b1 then has the second
Bisch-Haagerup fish as principal graph, written to ``rho_b1.dot`` in the
working directory.

    python3 demos/su2_8_z2.py
"""
from pathlib import Path

from fusionforge import (
    build,
    decompose_induction,
    emit,
    index_and_mu,
    induced_environment,
    mu_index,
    principal_graph,
    s_matrix,
    su,
    verlinde_ring,
)

alg = su(2, 8)
S = s_matrix(alg)
R = verlinde_ring(alg)
print(f"{alg}: {len(R)} weights, mu = {mu_index(S):.7g}")
print("d of Dynkin label 4:", f"{S.dimensions[4]:.7g}")
print("[4]x[4] =", R.simple("4") * R.simple("4"))

# the extension by the simple current 8 (h = 2)
stage = build("su2_8_z2").stage()
rep = decompose_induction(stage.spec, stage.generators)
B = rep.ring
print("\nspectrum:", stage.spec.theta, f"(index {stage.spec.index:.7g})")
print("<alpha_4, alpha_4> =", rep.gram_entry("4", "4"))
print("[alpha_4] =", rep.alpha("4"))
for x in ("b1", "b2"):
    print(f"d_{x} = {B.dims[B.index(x)]:.7g},  [{x}^2] = {B.simple(x) ** 2}")
print("[b1 b2] =", B.simple("b1") * B.simple("b2"))

mu = index_and_mu(stage.spec, mu_index(S) / 4)
print(f"\nmu_A / [B:A]^2 = {mu.mu_extension:.7g} (relative error {mu.relative_error:.1e})")

# principal graph of rho b1: even side from kbar kappa, odd side by Gram factorization
env = induced_environment(rep, "b1", "rho b1")
g = principal_graph(env)
print("\nkbar kappa =", env.kbar_kappa)
print("principal graph:", g.stats(), f"index {g.index:.7g}")
out = Path("rho_b1.dot")
out.write_text(emit(g, "dot"))
print(f"wrote {out}")
