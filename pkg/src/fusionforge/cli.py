"""Command-line front end: ``fusionforge <command> [options]``.

Weights are comma-joined Dynkin labels (``1,0,0,1``); with ``--halfint`` the
SU(2) label ``i`` stands for the Dynkin label ``2i``.  Floats are printed
with 7 significant digits.  Every command accepts ``--json``.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .config import available_configs, build, load_config
from .errors import FusionForgeError
from .extension import ExtensionSpec, decompose_induction, index_and_mu, intermediate_check
from .fusionring import TableRing, fibonacci_ring, pointed_ring, weight_ring
from .graphs import emit, fusion_graph, induced_environment, principal_graph
from .kacmoody import AlgebraId, color, conformal_weight, enumerate_weights, parse_weight
from .modular import modular_invariants, mu_index, quantum_dimension_weyl, s_matrix, t_matrix


def fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{0.0 if abs(x) < 1e-12 else x:.7g}"
    return str(x)


def _emit(args, text: str, payload) -> None:
    out = json.dumps(payload, indent=1, default=str) + "\n" if args.json else text
    if getattr(args, "out", None):
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------------
# weights and labels


def _algebra(args) -> AlgebraId:
    if args.series is None or args.rank is None or args.level is None:
        raise SystemExit("error: --series, --rank and --level are required")
    return AlgebraId(args.series, args.rank, args.level)


def _weight(args, alg: AlgebraId, text: str):
    if args.halfint:
        if alg.series != "A" or alg.rank != 1:
            raise SystemExit("error: --halfint applies to SU(2) only")
        two_i = Fraction(text) * 2
        if two_i.denominator != 1:
            raise SystemExit(f"error: {text} is not a half integer")
        text = str(int(two_i))
    return parse_weight(alg, text)


def _wstr(args, w) -> str:
    if getattr(args, "halfint", False):
        return str(Fraction(w.labels[0], 2))
    return ",".join(map(str, w.labels))


def _label(args, ring, lab) -> str:
    if hasattr(lab, "labels") and hasattr(lab, "algebra"):
        return _wstr(args, lab)
    return ring.label_str(lab)


def _sector_text(args, sector) -> str:
    ring = sector.ring
    parts = []
    for lab, m in sector.items():
        s = f"[{_label(args, ring, lab)}]"
        parts.append(s if m == 1 else f"{m}{s}")
    return " + ".join(parts) or "0"


def _sector_json(args, sector) -> list:
    return [{"label": _label(args, sector.ring, lab), "mult": m} for lab, m in sector.items()]


# ---------------------------------------------------------------------------
# commands


def cmd_weights(args) -> int:
    alg = _algebra(args)
    rows = []
    for w in enumerate_weights(alg):
        rows.append({"weight": _wstr(args, w), "color": color(w) if alg.series == "A" else None,
                     "h": str(conformal_weight(w)), "d": float(quantum_dimension_weyl(w))})
    lines = [f"# {alg}: {len(rows)} weights", "# weight\tcolor\th\td"]
    lines += [f"{r['weight']}\t{'-' if r['color'] is None else r['color']}\t{r['h']}\t{fmt(r['d'])}" for r in rows]
    _emit(args, "\n".join(lines) + "\n", {"algebra": str(alg), "weights": rows})
    return 0


def cmd_smatrix(args) -> int:
    alg = _algebra(args)
    S = s_matrix(alg)
    labels = [_wstr(args, w) for w in S.weights]
    lines = [f"# S-matrix of {alg}, unitarity defect {S.unitarity_defect():.2e}"]
    for lab, row in zip(labels, S.entries):
        cells = [fmt(float(z.real)) if abs(z.imag) < 1e-12 else f"{fmt(float(z.real))}{float(z.imag):+.7g}j"
                 for z in row]
        lines.append(f"{lab}\t" + "\t".join(cells))
    pairs = np.stack([S.entries.real, S.entries.imag], axis=-1).round(12) + 0.0
    payload = {"algebra": str(alg), "weights": labels, "entries": pairs.tolist()}
    _emit(args, "\n".join(lines) + "\n", payload)
    return 0


def cmd_fuse(args) -> int:
    alg = _algebra(args)
    R = weight_ring(alg)
    a, b = (R.simple(_weight(args, alg, x)) for x in (args.lam, args.mu))
    prod = a * b
    _emit(args, _sector_text(args, prod) + "\n",
          {"algebra": str(alg), "lambda": args.lam, "mu": args.mu, "product": _sector_json(args, prod)})
    return 0


def cmd_dim(args) -> int:
    alg = _algebra(args)
    w = _weight(args, alg, args.weight)
    d = float(quantum_dimension_weyl(w))
    payload = {"algebra": str(alg), "weight": _wstr(args, w), "d_weyl": d}
    text = f"d = {fmt(d)} (Weyl)"
    if alg.series == "A" and not args.no_s:
        S = s_matrix(alg)
        ds = float(S.dimensions[S.index(w)])
        payload["d_s"] = ds
        text += f"; {fmt(ds)} (S-matrix)"
    _emit(args, text + "\n", payload)
    return 0


def cmd_mu(args) -> int:
    if args.config:
        st = build(load_config(args.config, tau=_tau(args))).stage(args.stage)
        target = st.raw.get("mu_extension")
        rep = index_and_mu(st.spec, target, tol=np.inf) if target is not None else index_and_mu(st.spec)
        payload = {"config": st.name, "index": rep.index, "mu_base": rep.mu_base, "mu_extension": rep.mu_extension,
                   "expected": rep.expected, "relative_error": rep.relative_error}
        text = f"[B:A] = {fmt(rep.index)}; mu_A = {fmt(rep.mu_base)}; mu_B = mu_A/[B:A]^2 = {fmt(rep.mu_extension)}"
        if rep.expected is not None:
            text += f" (expected {fmt(rep.expected)}, relative error {rep.relative_error:.2e})"
        _emit(args, text + "\n", payload)
        return 0
    alg = _algebra(args)
    mu = float(mu_index(alg))
    _emit(args, f"mu({alg}) = {fmt(mu)}\n", {"algebra": str(alg), "mu": mu})
    return 0


def _tau(args):
    t = getattr(args, "tau", None)
    return [int(x) for x in t.split(",")] if t else None


def cmd_induce(args) -> int:
    if args.config:
        st = build(load_config(args.config, tau=_tau(args))).stage(args.stage)
        spec, gens = st.spec, list(args.generators) or st.generators
        resolve, depth = args.resolve or st.resolve, args.depth or st.depth
        inter = st.raw.get("intermediate")
    else:
        alg = _algebra(args)
        R = weight_ring(alg)
        spec = ExtensionSpec(R, R.one, name=f"{alg} (identity)")
        gens = [",".join(map(str, _weight(args, alg, g).labels)) for g in args.generators]
        resolve, depth, inter = args.resolve or "raise", args.depth or 4, None
    if not gens:
        raise SystemExit("error: no generators given")
    rep = decompose_induction(spec, gens, depth=depth, resolve=resolve)
    lines = [f"# {spec.name or 'extension'}: index {fmt(spec.index)}, {len(rep.rows)} induced labels, "
             f"{len(rep.names)} irreducibles"]
    for g in gens:
        lines.append(f"<alpha_{g}, alpha_{g}> = {rep.gram_entry(g, g)}")
        lines.append(f"[alpha_{g}] = {rep.alpha(g)}")
    lines.append("# irreducibles")
    for n, d in zip(rep.names, rep.dims):
        lines.append(f"{n}\td = {fmt(float(d))}")
    if args.all:
        lines.append("# decompositions")
        lines += [f"[alpha_{k}] = {v}" for k, v in rep.decompositions().items()]
    payload = {"spec": spec.name, "index": spec.index, "generators": gens,
               "gram": {g: rep.gram_entry(g, g) for g in gens},
               "alpha": {g: str(rep.alpha(g)) for g in gens},
               "irreducibles": [{"name": n, "d": float(d)} for n, d in zip(rep.names, rep.dims)],
               "decompositions": rep.decompositions(), "notes": rep.notes,
               "fusion_complete": rep.ring.complete}
    if inter is not None:
        cand = ",".join(map(str, inter)) if isinstance(inter, list) else inter
        ic = intermediate_check(rep, cand)
        lines.append(f"intermediate subfactor of alpha_{cand}: {ic}")
        payload["intermediate"] = str(ic)
    lines += [f"note: {n}" for n in rep.notes]
    _emit(args, "\n".join(lines) + "\n", payload)
    return 0


def _ring_from(args):
    name = args.ring
    if name is None:
        return None
    key = name.lower()
    if key in ("fibonacci", "fib"):
        return fibonacci_ring()
    if key.startswith("z") and not name.endswith(".json"):
        return pointed_ring(name)
    return TableRing.from_json(Path(name).read_text())


def cmd_graph(args) -> int:
    ring = _ring_from(args)
    report = None
    st = None
    if args.config:
        st = build(load_config(args.config, tau=_tau(args))).stage(args.stage)
        report = decompose_induction(st.spec, st.generators, depth=st.depth, resolve=st.resolve)
    elif ring is None:
        ring = weight_ring(_algebra(args))
    if args.principal:
        if report is not None:
            env = st.raw.get("environment", {})
            sector = args.iota or env.get("sector")
            if sector is None:
                raise SystemExit("error: give --iota or a config with an environment")
            name = env.get("name", sector) if args.iota is None else args.iota
            g = principal_graph(induced_environment(report, sector, name), depth_cap=args.depth_cap)
        else:
            if args.iota is None:
                raise SystemExit("error: --principal needs --iota")
            g = principal_graph(ring, args.iota, depth_cap=args.depth_cap)
        stats = g.stats()
    else:
        gen = args.generator
        if gen is None:
            raise SystemExit("error: give --generator or --principal")
        target = report.ring if report is not None else ring
        g = fusion_graph(target, gen)
        stats = {"vertices": len(g.labels), "edges": g.edge_count}
    text = emit(g, args.format)
    if args.out:
        Path(args.out).write_text(text)
        sys.stdout.write(json.dumps(stats) + "\n" if args.json else
                         f"wrote {args.out}: " + ", ".join(f"{k} {v}" for k, v in stats.items()) + "\n")
    else:
        sys.stdout.write(text)
    return 0


def cmd_invariants(args) -> int:
    alg = _algebra(args)
    S = s_matrix(alg)
    Zs = modular_invariants(S, t_matrix(alg), max_entry=args.max_entry, max_dim=args.max_dim)
    labels = [_wstr(args, w) for w in S.weights]
    out, lines = [], [f"# {alg}: {len(Zs)} physical invariants with entries <= {args.max_entry}"]
    for k, Z in enumerate(Zs):
        vac = {labels[j]: int(Z[0, j]) for j in np.flatnonzero(Z[0])}
        perm = bool((Z.sum(axis=1) == 1).all())
        out.append({"vacuum_row": vac, "trace": int(np.trace(Z)), "permutation": perm,
                    "nonzero": [[int(i), int(j), int(Z[i, j])] for i, j in zip(*np.nonzero(Z))]})
        row = " + ".join(f"{m}[{lab}]" if m > 1 else f"[{lab}]" for lab, m in vac.items())
        lines.append(f"Z{k}: vacuum row {row}; trace {int(np.trace(Z))}; {'permutation' if perm else 'block'}")
    _emit(args, "\n".join(lines) + "\n", {"algebra": str(alg), "invariants": out})
    return 0


def cmd_verify(args) -> int:
    from .verify import SUITES, run
    if args.suite not in ("all", *SUITES):
        raise SystemExit(f"error: unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = run(args.suite)
    ok = all(r.passed for r in results)
    if args.json:
        payload = {"suite": args.suite, "passed": ok,
                   "cases": [{"suite": r.case.suite, "name": r.case.name, "criterion": r.case.criterion,
                              "passed": r.passed, "measured": r.measured, "expected": r.case.expected,
                              "tolerance": r.case.tolerance, "provenance": r.case.provenance,
                              "detail": r.detail, "seconds": round(r.seconds, 3)} for r in results]}
        sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    else:
        for r in results:
            print(r.line())
        n = sum(r.passed for r in results)
        print(f"{n}/{len(results)} cases pass")
    return 0 if ok else 1


def cmd_configs(args) -> int:
    names = available_configs()
    _emit(args, "\n".join(names) + "\n", {"configs": names})
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_algebra(p):
    p.add_argument("--series", choices=["A", "D"], help="A for SU(rank+1), D for Spin(2 rank)")
    p.add_argument("--rank", type=int)
    p.add_argument("--level", type=int)
    p.add_argument("--halfint", action="store_true", help="SU(2) labels as half integers i = l/2")


def _add_common(p):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="write output to this file")


def _add_config(p):
    p.add_argument("--config", help="bundled config name or path to a JSON config")
    p.add_argument("--stage", help="stage name for multi-stage configs")
    p.add_argument("--tau", help="permutation of 1..5 for parametrized spectra, e.g. 2,1,3,4,5")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fusionforge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="level-k weights with color, conformal weight and dimension")
    _add_algebra(p), _add_common(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("smatrix", help="Kac-Peterson S-matrix (type A)")
    _add_algebra(p), _add_common(p)
    p.set_defaults(func=cmd_smatrix)

    p = sub.add_parser("fuse", help="fusion product of two weights")
    _add_algebra(p), _add_common(p)
    p.add_argument("lam")
    p.add_argument("mu")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("dim", help="quantum dimension of a weight")
    _add_algebra(p), _add_common(p)
    p.add_argument("weight")
    p.add_argument("--no-s", action="store_true", help="skip the S-matrix cross-check")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("mu", help="global index of an algebra, or index bookkeeping of a config")
    _add_algebra(p), _add_common(p), _add_config(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("induce", help="alpha-induction report")
    _add_algebra(p), _add_common(p), _add_config(p)
    p.add_argument("generators", nargs="*")
    p.add_argument("--resolve", choices=["raise", "first"])
    p.add_argument("--depth", type=int)
    p.add_argument("--all", action="store_true", help="print every induced decomposition")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("graph", help="fusion graph or principal graph as DOT/JSON")
    _add_algebra(p), _add_config(p)
    p.add_argument("--json", action="store_true", help="print statistics as JSON when writing --out")
    p.add_argument("--out")
    p.add_argument("--ring", help="fibonacci, a pointed group (Z4, Z2xZ2, Z10) or a table-ring JSON file")
    p.add_argument("--generator")
    p.add_argument("--principal", action="store_true")
    p.add_argument("--iota")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--depth-cap", type=int, default=32)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("invariants", help="physical modular invariants")
    _add_algebra(p), _add_common(p)
    p.add_argument("--max-entry", type=int, default=2)
    p.add_argument("--max-dim", type=int, default=32)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="run verification cases; exit code 0 iff all pass")
    p.add_argument("suite", nargs="?", default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("configs", help="list bundled configs")
    _add_common(p)
    p.set_defaults(func=cmd_configs)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FusionForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
