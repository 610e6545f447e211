"""The chain of inclusions SU(5)_5 < A1 < Spin(24)_1.

The adjoint v0 has <alpha_v0, alpha_v0> = 3 and splits as sigma1 + A +
sigma1 A.  The vector weight carries an intermediate subfactor with
rho1 rho1-bar = 1 + A.  Over the simple-current extension A1 the induced
sectors of every A1 label are listed.

    python3 demos/su5_5_spin24.py
"""
from fusionforge import build, decompose_induction, intermediate_check, verlinde_ring, su

R = verlinde_ring(su(5, 5))
v0 = R.simple("1,0,0,1")
print("[v0]^2 =", v0 * v0)

cfg = build("su5_5_spin24")
for st in cfg.stages:
    rep = decompose_induction(st.spec, st.generators, depth=st.depth, resolve=st.resolve)
    print(f"\n== {st.spec.name}: index {st.spec.index:.7g}")
    for g in st.generators:
        print(f"<alpha_{g}, alpha_{g}> = {rep.gram_entry(g, g)};  [alpha_{g}] = {rep.alpha(g)}")
    print("irreducibles:", ", ".join(f"{n} ({d:.7g})" for n, d in zip(rep.names, rep.dims)))
    if "intermediate" in st.raw:
        cand = ",".join(map(str, st.raw["intermediate"]))
        print(f"rho rho-bar from alpha_{cand}:", intermediate_check(rep, cand))
    if st.name == "a1":
        for lab in ("ad", "b1", "b2", "b3", "b4", "b5", "z1", "z2", "z3"):
            print(f"  [alpha_{lab}] = {rep.alpha(lab)}")
        A = rep.ring.simple("A")
        print("  [A]^2 =", A * A)
    for note in rep.notes:
        print("note:", note)
