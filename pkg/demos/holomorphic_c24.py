"""Index bookkeeping for holomorphic c = 24 theories and the Out bound.

For a holomorphic extension B of A, mu_B = 1 forces mu_A = [B:A]^2.  The
identity is checked on the shipped c = 24 spectra.  The normal pairings F1
and F2 of the two A1 x A1 theories then bound the group generated by g and
F1 F2^-1, for every choice of the free permutation tau.

    python3 demos/holomorphic_c24.py
"""
import itertools

from fusionforge import (
    build,
    central_charge,
    closure,
    index_and_mu,
    load_config,
    normality_check,
    pairing_to_permutation,
    spin,
    su,
)

print("central charges:", central_charge(su(7, 7)), central_charge(spin(12, 5)) + 2, 2 * central_charge(su(5, 5)))

for name in ("no11_su7_7", "no20_spin12_5", "no9_a1a1"):
    st = build(name).stage()
    target = st.raw.get("mu_extension", "holomorphic")
    rep = index_and_mu(st.spec, target)
    print(f"{name}: [B:A] = {rep.index:.7g}, mu_A = {rep.mu_base:.7g}, "
          f"mu_A/[B:A]^2 = {rep.mu_extension:.7g} (expected {rep.expected:.7g})")

order = ["ad", "b1", "b2", "b3", "b4", "b5"]
F2 = normality_check(build("no67_a1a1").stage().spec).pairing
P2 = pairing_to_permutation({k: F2[k] for k in order}, order)
g = pairing_to_permutation(dict(zip(order, ["ad", "b2", "b3", "b4", "b5", "b1"])), order)
orders = []
for tau in itertools.permutations(range(1, 6)):
    F1 = normality_check(build(load_config("no9_a1a1", tau=list(tau))).stage().spec).pairing
    P1 = pairing_to_permutation({k: F1[k] for k in order}, order)
    G = closure([g, P1 * P2.inverse()])
    orders.append((G.order, G.is_transitive))
print("\nF1(b1) =", normality_check(build("no9_a1a1").stage().spec).pairing["b1"])
print("group orders over all 120 tau:", sorted({o for o, _ in orders}))
print("minimum order:", min(o for o, _ in orders), "| all transitive:", all(t for _, t in orders))
