"""Fusion graphs and bipartite principal graphs, with DOT/JSON output.

A principal graph is built either inside a single fusion ring that contains
both ``iota`` and its dual, or from the even side only: given the even ring
and the sector ``kbar kappa``, the odd vertices are recovered by factoring
the Gram matrix ``<kappa x, kappa x'> = <(kbar kappa) x, x'>`` over the even
vertices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ClosureError, DomainError, NumericalError
from .extension import InductionReport, induction_inner_product
from .fusionring import FusionRing, Sector
from .gram import unique_factorization

DEFAULT_DEPTH_CAP = 32
NORM_TOL = 1e-4


def _fmt(x: float) -> str:
    return f"{x:.7g}"


@dataclass
class FusionGraph:
    """Directed multigraph of left multiplication by ``generator``: ``adjacency[l, n] = N_{g l}^n``."""

    labels: list
    adjacency: np.ndarray
    generator: str
    name: str = ""

    def vertex(self, label) -> int:
        names = [str(x) for x in self.labels]
        try:
            return names.index(str(label))
        except ValueError:
            raise DomainError(f"{label!r} is not a vertex") from None

    def loops(self, label) -> int:
        i = self.vertex(label)
        return int(self.adjacency[i, i])

    def successors(self, label) -> dict:
        i = self.vertex(label)
        return {str(self.labels[j]): int(m) for j, m in enumerate(self.adjacency[i]) if m}

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum())


def fusion_graph(ring: FusionRing, generator) -> FusionGraph:
    g = ring.index(generator)
    A = np.array([ring.fuse(g, j) for j in range(len(ring))], dtype=np.int64)
    labels = [ring.label_str(x) for x in ring.labels]
    return FusionGraph(labels, A, ring.label_str(ring.labels[g]), name=getattr(ring, "name", ""))


@dataclass
class BipartiteGraph:
    even: list
    odd: list
    edges: np.ndarray            # even x odd multiplicities
    even_dims: np.ndarray | None = None
    odd_dims: np.ndarray | None = None
    index: float | None = None
    name: str = ""
    depth: int = 0

    def __post_init__(self):
        self.edges = np.asarray(self.edges, dtype=np.int64)
        if self.edges.shape != (len(self.even), len(self.odd)):
            raise DomainError("edge matrix does not match the vertex lists")
        if (self.edges < 0).any():
            raise DomainError("edge multiplicities must be non-negative")
        if not self.edges.any(axis=1).all() or not self.edges.any(axis=0).all():
            raise DomainError("every vertex of a principal graph must be connected")
        if self.index is not None and abs(self.norm_squared - self.index) > NORM_TOL * max(1.0, self.index):
            raise NumericalError(f"graph norm^2 {self.norm_squared:.7g} differs from the index {self.index:.7g}")

    @property
    def norm_squared(self) -> float:
        A = self.edges.astype(float)
        return float(np.max(np.linalg.eigvalsh(A @ A.T)))

    @property
    def edge_count(self) -> int:
        return int(self.edges.sum())

    def stats(self) -> dict:
        return {"even": len(self.even), "odd": len(self.odd), "edges": self.edge_count,
                "norm_squared": round(self.norm_squared, 7)}


# ---------------------------------------------------------------------------
# construction


def principal_graph(env, iota=None, depth_cap: int = DEFAULT_DEPTH_CAP) -> BipartiteGraph:
    """Principal graph of ``iota``.

    ``env`` is either a fusion ring containing ``iota`` and its dual, or an
    :class:`EvenEnvironment` (then ``iota`` is ignored).
    """
    if isinstance(env, EvenEnvironment):
        return env.principal_graph(depth_cap)
    if not isinstance(env, FusionRing):
        raise DomainError("environment must be a fusion ring or an EvenEnvironment")
    ring = env
    i = ring.index(iota)
    ib = ring.dual_index(i)
    even, odd = [0], []
    for depth in range(1, depth_cap + 1):
        new_odd = sorted(set(odd) | {y for x in even for y in np.flatnonzero(ring.fuse(i, x))})
        new_even = sorted(set(even) | {x for y in new_odd for x in np.flatnonzero(ring.fuse(ib, y))})
        if new_odd == odd and new_even == even:
            break
        even, odd = new_even, new_odd
    else:
        raise ClosureError(f"principal graph did not close within depth {depth_cap}")
    E = np.array([[ring.fuse(i, x)[y] for y in odd] for x in even], dtype=np.int64)
    lab = lambda k: ring.label_str(ring.labels[k])
    return BipartiteGraph([lab(x) for x in even], [lab(y) for y in odd], E,
                          np.asarray(ring.dims)[even], np.asarray(ring.dims)[odd],
                          index=float(ring.dims[i]) ** 2, name=lab(i), depth=depth)


@dataclass
class EvenEnvironment:
    """Even-side data of a subfactor ``kappa``: the even fusion ring and ``kbar kappa`` in it."""

    ring: FusionRing
    kbar_kappa: Sector
    name: str = "kappa"

    def __post_init__(self):
        if self.kbar_kappa.ring is not self.ring:
            raise DomainError("kbar kappa must be a sector of the even ring")
        if self.kbar_kappa.multiplicity(self.ring.labels[0]) < 1:
            raise DomainError("kbar kappa must contain the vacuum")

    @property
    def index(self) -> float:
        return self.kbar_kappa.dimension()

    def principal_graph(self, depth_cap: int = DEFAULT_DEPTH_CAP) -> BipartiteGraph:
        ring, kk = self.ring, self.kbar_kappa
        even = [0]
        for depth in range(1, depth_cap + 1):
            grown = sorted(set(even) | {j for x in even for j, _ in (kk * Sector(ring, {x: 1})).index_items()})
            if grown == even:
                break
            even = grown
        else:
            raise ClosureError(f"principal graph did not close within depth {depth_cap}")
        G = np.array([[(kk * Sector(ring, {x: 1})).vector()[y] for y in even] for x in even], dtype=np.int64)
        dk = np.sqrt(self.index)
        dims = np.asarray(ring.dims, dtype=float)[even]
        sol = unique_factorization(G, dk * dims)
        E = sol.X
        odd = []
        count: dict = {}
        for c in range(E.shape[1]):
            first = int(np.flatnonzero(E[:, c])[0])
            base = f"{self.name}*{ring.label_str(ring.labels[even[first]])}"
            count[base] = count.get(base, 0) + 1
            odd.append(base)
        # disambiguate odd vertices that first appear in the same product
        seen: dict = {}
        for k, base in enumerate(odd):
            if count[base] > 1:
                seen[base] = seen.get(base, 0) + 1
                odd[k] = f"{base}#{seen[base]}"
        return BipartiteGraph([ring.label_str(ring.labels[x]) for x in even], odd, E, dims, sol.dims,
                              index=self.index, name=self.name, depth=depth)


def _alpha_pairing(report: InductionReport, lam: int, col: int) -> int:
    """``<alpha_lam, x_col>`` for a base label, using the report or reciprocity bounds."""
    spec = report.spec
    if lam in report.rows:
        return int(report.B[report.rows.index(lam), col])
    # x_col sits inside alpha_mu for some decomposed mu, so <alpha_lam, x> <= <alpha_lam, alpha_mu>
    lab = spec.base.labels[lam]
    for r, mu in enumerate(report.rows):
        if report.B[r, col] and induction_inner_product(spec, lab, spec.base.labels[mu]) == 0:
            return 0
    raise ClosureError(f"alpha_{spec.base.label_str(lab)} is not decomposed; add a generator reaching it")


def induced_environment(report: InductionReport, x, name: str | None = None) -> EvenEnvironment:
    """Even environment of ``kappa = x iota`` for the inclusion ``iota: A -> B`` and a sector ``x`` of B.

    Uses ``bar iota y iota = sum_l <alpha_l, y> l`` with ``y = bar x x``.
    """
    ring = report.ring
    if not isinstance(x, Sector):
        x = ring.simple(x)
    y = x.conjugate() * x
    base = report.spec.base
    coeffs = {}
    for lam in range(len(base)):
        m = sum(mult * _alpha_pairing(report, lam, col) for col, mult in y.index_items())
        if m:
            coeffs[lam] = m
    label = name or f"iota {x}".replace("[", "").replace("]", "")
    return EvenEnvironment(base, Sector(base, coeffs), label)


# ---------------------------------------------------------------------------
# output


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit(graph, fmt: str = "dot") -> str:
    """Deterministic DOT or JSON text for a BipartiteGraph or FusionGraph."""
    if fmt not in ("dot", "json"):
        raise DomainError(f"unknown format {fmt!r}")
    if isinstance(graph, BipartiteGraph):
        return _emit_bipartite(graph, fmt)
    if isinstance(graph, FusionGraph):
        return _emit_fusion(graph, fmt)
    raise DomainError("emit expects a BipartiteGraph or a FusionGraph")


def _emit_bipartite(g: BipartiteGraph, fmt: str) -> str:
    if fmt == "json":
        out = {"even": list(map(str, g.even)), "odd": list(map(str, g.odd)),
               "edges": [[int(i), int(j), int(g.edges[i, j])] for i, j in zip(*np.nonzero(g.edges))]}
        if g.even_dims is not None:
            out["even_dims"] = [float(_fmt(d)) for d in g.even_dims]
        if g.odd_dims is not None:
            out["odd_dims"] = [float(_fmt(d)) for d in g.odd_dims]
        if g.index is not None:
            out["index"] = float(_fmt(g.index))
        return json.dumps(out, indent=1) + "\n"
    lines = [f"graph {_q(g.name or 'principal')} {{"]
    for k, v in enumerate(g.even):
        extra = f", xlabel={_q(_fmt(g.even_dims[k]))}" if g.even_dims is not None else ""
        lines.append(f"  e{k} [shape=box, label={_q(v)}{extra}];")
    for k, v in enumerate(g.odd):
        extra = f", xlabel={_q(_fmt(g.odd_dims[k]))}" if g.odd_dims is not None else ""
        lines.append(f"  o{k} [shape=circle, label={_q(v)}{extra}];")
    for i in range(len(g.even)):
        for j in range(len(g.odd)):
            for _ in range(int(g.edges[i, j])):
                lines.append(f"  e{i} -- o{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_fusion(g: FusionGraph, fmt: str) -> str:
    if fmt == "json":
        out = {"generator": g.generator, "vertices": list(map(str, g.labels)),
               "edges": [[int(i), int(j), int(g.adjacency[i, j])] for i, j in zip(*np.nonzero(g.adjacency))]}
        return json.dumps(out, indent=1) + "\n"
    lines = [f"digraph {_q(g.name or 'fusion')} {{", f"  label={_q('generator ' + g.generator)};"]
    for k, v in enumerate(g.labels):
        lines.append(f"  v{k} [label={_q(v)}];")
    n = len(g.labels)
    for i in range(n):
        for j in range(n):
            for _ in range(int(g.adjacency[i, j])):
                lines.append(f"  v{i} -> v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
