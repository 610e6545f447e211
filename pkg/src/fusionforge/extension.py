"""alpha-induction for an extension A ⊂ B described by its spectrum.

The extension is given at the level of fusion rings: the base ring of A,
the spectrum ``theta`` (restriction of the vacuum of B) and optionally the
restrictions ("branching rows") of named sectors of B.  Everything else is
derived from the reciprocity ``<alpha_l, alpha_m> = <l theta, m>``.

Simple-current extensions of SU(n)_k, including the resolution of a fixed
point orbit, are built directly from the S-matrix.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg as sla

from .errors import (
    AmbiguityError,
    AxiomError,
    DomainError,
    FactorizationError,
    IdentityError,
    LocalityError,
    NumericalError,
)
from .fusionring import FusionRing, ProductRing, Sector, TableRing, VerlindeRing, inner_product, verlinde_ring
from .gram import factor_gram
from .kacmoody import AlgebraId, conformal_weight, central_charge, orbit, simple_current
from .modular import SMatrix, s_matrix

DIM_TOL = 1e-6
MU_TOL = 1e-4
DEFAULT_DEPTH = 4


def _as_sector(ring: FusionRing, x) -> Sector:
    if isinstance(x, Sector):
        x._check(ring.one)
        return x
    return ring.simple(x)


@dataclass(frozen=True, eq=False)
class ExtensionSpec:
    """Fusion-level data of an irreducible extension A ⊂ B.

    ``sectors`` are named sectors of B given by their restriction to A; they
    are assumed to be DHR sectors of B (so they commute with everything
    induced).  ``ambient`` is a fusion ring containing those names, and
    ``ambient_rows`` are restrictions used only to recognise new induced
    sectors after the fact.
    """

    base: FusionRing
    theta: Sector
    sectors: Mapping[str, Sector] = field(default_factory=dict)
    ambient: FusionRing | None = None
    ambient_rows: Mapping[str, Sector] = field(default_factory=dict)
    new_names: tuple = ()
    name: str = ""
    vacuum_name: str = "1"

    def __post_init__(self):
        if self.theta.ring is not self.base:
            raise DomainError("the spectrum must be a sector of the base ring")
        if self.theta.multiplicity(self.base.labels[0]) != 1:
            raise DomainError("the spectrum must contain the vacuum exactly once (irreducible extension)")
        for key, attr in (("sectors", self.sectors), ("ambient_rows", self.ambient_rows)):
            for nm, row in attr.items():
                if not isinstance(row, Sector) or row.ring is not self.base:
                    raise DomainError(f"branching row {nm!r} is not a sector of the base ring")
            object.__setattr__(self, key, MappingProxyType(dict(attr)))
        object.__setattr__(self, "new_names", tuple(self.new_names))
        if self.index < 1 - DIM_TOL:
            raise DomainError(f"index {self.index} < 1")

    @property
    def index(self) -> float:
        return self.theta.dimension()

    def row(self, name: str) -> Sector:
        if name == self.vacuum_name:
            return self.theta
        if name in self.sectors:
            return self.sectors[name]
        if name in self.ambient_rows:
            return self.ambient_rows[name]
        raise DomainError(f"no branching row for {name!r}")


# ---------------------------------------------------------------------------
# reciprocity


def induction_inner_product(spec: ExtensionSpec, lam, mu) -> int:
    """``<alpha_lam, alpha_mu> = <lam theta, mu>`` in the base ring."""
    lam = _as_sector(spec.base, lam)
    mu = _as_sector(spec.base, mu)
    return inner_product(lam * spec.theta, mu)


def sigma_pairing(spec: ExtensionSpec, lam, name: str) -> int:
    """Multiplicity of the named B-sector inside ``alpha_lam``."""
    lam = _as_sector(spec.base, lam)
    return inner_product(lam, spec.row(name))


def induction_closure(ring: FusionRing, generators: Sequence[Sector], depth: int = DEFAULT_DEPTH):
    """Base labels reached from the generators by pairwise products, with a flag for stability."""
    have = {0}
    for g in generators:
        have.update(i for i, _ in g.index_items())
    frontier = set(have)
    stable = False
    for _ in range(depth):
        new = set()
        for a in frontier:
            for b in list(have):
                new.update(np.flatnonzero(ring.fuse(a, b)).tolist())
        new -= have
        if not new:
            stable = True
            break
        have |= new
        frontier = new
    else:
        # one more sweep to see whether the last depth was already closed
        stable = all(set(np.flatnonzero(ring.fuse(a, b))) <= have for a in frontier for b in have)
    return sorted(have), stable


# ---------------------------------------------------------------------------
# induced sectors


class InducedRing(FusionRing):
    """Irreducible induced sectors; products may be only partially determined."""

    kind = "induced"

    def __init__(self, labels, N, dims, name=""):
        self.labels = list(labels)
        self.N = np.asarray(N, dtype=np.int64)
        self.dims = np.asarray(dims, dtype=float)
        self.name = name
        super().__init__()

    @property
    def complete(self) -> bool:
        return bool((self.N >= 0).all())

    def _fuse(self, i, j):
        v = self.N[i, j]
        if (v < 0).any():
            raise DomainError(
                f"the product {self.labels[i]} x {self.labels[j]} is not determined by the induction data")
        return v.copy()


@dataclass(eq=False)
class InductionReport:
    spec: ExtensionSpec
    rows: list            # base indices, closure of the generators
    gram: np.ndarray
    B: np.ndarray         # rows x irreducibles, <alpha_l, x>
    names: list
    dims: np.ndarray
    named: int            # leading columns that are named sectors of B
    ring: InducedRing
    actions: dict         # name of invertible B-sector -> permutation of columns
    closed: bool
    alternatives: int = 1
    notes: list = field(default_factory=list)

    def column(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DomainError(f"{name!r} is not an induced irreducible of this report") from None

    def row_of(self, lam) -> int:
        i = self.spec.base.index(lam)
        try:
            return self.rows.index(i)
        except ValueError:
            raise DomainError(f"{lam} lies outside the induction closure") from None

    def alpha(self, lam) -> Sector:
        """Decomposition of ``alpha_lam`` (a base label or a base sector) into irreducibles."""
        if isinstance(lam, Sector):
            out = self.ring.zero
            for i, m in lam.index_items():
                out = out + self.alpha(i) * m
            return out
        return Sector.from_vector(self.ring, self.B[self.row_of(lam)])

    def gram_entry(self, lam, mu) -> int:
        return int(self.gram[self.row_of(lam), self.row_of(mu)])

    def decompositions(self) -> dict:
        base = self.spec.base
        return {base.label_str(base.labels[i]): str(Sector.from_vector(self.ring, self.B[r]))
                for r, i in enumerate(self.rows)}

    def check(self) -> None:
        """Re-verify the report invariants."""
        G = self.gram
        if not np.array_equal(G, G.T) or np.linalg.eigvalsh(G.astype(float)).min() < -1e-8:
            raise AxiomError("Gram matrix is not symmetric positive semidefinite")
        if not np.array_equal(self.B @ self.B.T, G):
            raise AxiomError("decomposition does not reproduce the Gram matrix")
        d = self.spec.base.dims[self.rows]
        if np.max(np.abs(self.B @ self.dims - d)) > DIM_TOL * max(1.0, d.max()):
            raise AxiomError("dimension additivity fails")


def _theta_vectors(spec: ExtensionSpec, rows) -> np.ndarray:
    ring = spec.base
    V = np.zeros((len(rows), len(ring)), dtype=np.int64)
    for r, i in enumerate(rows):
        for t, m in spec.theta.index_items():
            V[r] += m * ring.fuse(i, t)
    return V


def _row_vector(row: Sector, rows) -> np.ndarray:
    v = row.vector()
    return v[rows]


def _product_tensor(ring: FusionRing, rows):
    """P[a, b] = decomposition of rows[a] x rows[b] restricted to rows, or None if it leaves them."""
    pos = {i: r for r, i in enumerate(rows)}
    L = len(rows)
    P = np.zeros((L, L, L), dtype=np.int64)
    valid = np.ones((L, L), dtype=bool)
    for a, i in enumerate(rows):
        for b, j in enumerate(rows):
            v = ring.fuse(i, j)
            nz = np.flatnonzero(v)
            if any(k not in pos for k in nz):
                valid[a, b] = False
                continue
            for k in nz:
                P[a, b, pos[k]] = v[k]
    return P, valid


def _homomorphism_residual(B, P, valid) -> float:
    """Distance of <alpha_l alpha_m, x> from the range of (x, y) -> B_lx B_my.

    Only meaningful on a closed label set; returns 0 otherwise.
    """
    if not valid.all():
        return 0.0
    C = np.einsum("abn,nz->abz", P, B).astype(float)
    Bf = B.astype(float)
    Q = Bf @ np.linalg.pinv(Bf)
    proj = np.einsum("ac,bd,cdz->abz", Q, Q, C)
    return float(np.max(np.abs(proj - C), initial=0.0))


def _search_actions(B, dims, M, forced, cap=4096):
    """All permutations pi with sum_x B[:, x] B[:, pi(x)]^T = M respecting dims and forced images."""
    K = B.shape[1]
    order = sorted(range(K), key=lambda x: (x not in forced, -int(B[:, x].sum()), x))
    pi = [-1] * K
    used = [False] * K
    acc = np.zeros_like(M)
    out = []

    def rec(t):
        if len(out) >= cap:
            return
        if t == K:
            if np.array_equal(acc, M):
                out.append(tuple(pi))
            return
        x = order[t]
        cands = [forced[x]] if x in forced else range(K)
        for y in cands:
            if used[y] or abs(dims[x] - dims[y]) > DIM_TOL * max(1.0, dims[x]):
                continue
            contrib = np.outer(B[:, x], B[:, y])
            acc[...] += contrib
            if (acc <= M).all():
                pi[x] = y
                used[y] = True
                rec(t + 1)
                used[y] = False
                pi[x] = -1
            acc[...] -= contrib

    rec(0)
    return out


def _compose(p, q):
    """p after q."""
    return tuple(p[i] for i in q)


def _orbit_count(perms, K):
    parent = list(range(K))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x in range(K):
            parent[find(x)] = find(p[x])
    return len({find(x) for x in range(K)})


def _group_closure(perms, K):
    ident = tuple(range(K))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(p) for p in perms]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(K))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def _solve_fusion(B, P, valid, group, K, var_bounds=None, max_entries=4 * 10**7):
    """Fusion coefficients of the irreducibles from B N B^T = <alpha alpha, .>, reduced by the group action.

    Returns an int tensor with -1 marking undetermined entries.
    """
    # orbit representatives and a transporter for each column
    rep, carrier = {}, {}
    for x in range(K):
        if x in rep:
            continue
        for g in group:
            y = g[x]
            if y not in rep:
                rep[y] = x
                carrier[y] = g
    reps = sorted(set(rep.values()))
    inv = {g: tuple(np.argsort(g)) for g in group}
    var_index = {}
    known = {}
    for x0 in reps:
        for y0 in reps:
            for z in range(K):
                if x0 == 0:
                    known[(x0, y0, z)] = int(z == y0)
                elif y0 == 0:
                    known[(x0, y0, z)] = int(z == x0)
                else:
                    var_index[(x0, y0, z)] = len(var_index)

    def coord(x, y, z):
        gx, gy = carrier[x], carrier[y]
        # x = gx(x0), y = gy(y0), group elements commute and act on z through their inverse
        zz = inv[gy][inv[gx][z]]
        return rep[x], rep[y], zz

    C = np.einsum("abn,nz->abz", P, B)
    if valid.all():
        # on a closed label set B N B^T = C is equivalent to its projection G N G = B^T C B
        W = B.T @ B
        C = np.einsum("ap,bq,abz->pqz", B, B, C)
        pairs = [(a, b) for a in range(K) for b in range(K)]
    else:
        W = B
        pairs = [(a, b) for a in range(B.shape[0]) for b in range(B.shape[0]) if valid[a, b]]
    nv = len(var_index)
    if len(pairs) * K * max(nv, 1) > max_entries:
        return -np.ones((K, K, K), dtype=np.int64), 0
    E = np.zeros((len(pairs) * K, max(nv, 1)))
    rhs = np.zeros(len(pairs) * K)
    pa = np.array([a for a, _ in pairs])
    pb = np.array([b for _, b in pairs])
    for x in range(K):
        for y in range(K):
            w = (W[pa, x] * W[pb, y]).astype(float)
            if not w.any():
                continue
            for z in range(K):
                key = coord(x, y, z)
                rowsel = np.arange(len(pairs)) * K + z
                if key in known:
                    rhs[rowsel] -= w * known[key]
                else:
                    E[rowsel, var_index[key]] += w
    for p, (a, b) in enumerate(pairs):
        rhs[p * K:(p + 1) * K] += C[a, b]
    dims = None if var_bounds is None else var_bounds
    N = -np.ones((K, K, K), dtype=np.int64)
    vals = np.zeros(nv)
    determined = np.ones(nv, dtype=bool)
    completions = 1
    if nv:
        sol, *_ = np.linalg.lstsq(E, rhs, rcond=None)
        scale = max(1.0, float(np.abs(rhs).max(initial=0.0)))
        if np.max(np.abs(E @ sol - rhs), initial=0.0) > 1e-6 * scale:
            raise FactorizationError("induced sectors admit no fusion consistent with the homomorphism property")
        ns = sla.null_space(E, rcond=1e-10)
        determined = np.linalg.norm(ns, axis=1) < 1e-8 if ns.size else np.ones(nv, dtype=bool)
        vals = np.rint(sol)
        if (np.abs(sol - vals)[determined] > 1e-6).any() or (vals[determined] < 0).any():
            raise FactorizationError("forced fusion coefficients are not non-negative integers")

    def assemble(v, det):
        out = -np.ones((K, K, K), dtype=np.int64)
        for x in range(K):
            for y in range(K):
                for z in range(K):
                    key = coord(x, y, z)
                    if key in known:
                        out[x, y, z] = known[key]
                    elif det[var_index[key]]:
                        out[x, y, z] = int(v[var_index[key]])
        return out

    N = assemble(vals, determined)
    if nv and not determined.all() and dims is not None:
        cands = _integer_completions(sol, ns, var_index, dims, lambda v: assemble(v, np.ones(nv, bool)))
        completions = len(cands)
        if completions == 1:
            N = cands[0]
        elif completions > 1:
            # keep what all admissible completions agree on
            stack = np.stack(cands)
            agree = (stack == stack[0]).all(axis=0)
            N = np.where(agree, stack[0], -1)
        else:
            raise FactorizationError("no integral associative completion of the induced fusion exists")
    return N, completions


def _integer_completions(sol, ns, var_index, dims, assemble, cap=200000):
    """Integral points of ``sol + ns t`` inside the dimension box that give a valid fusion ring."""
    keys = sorted(var_index, key=var_index.get)
    nv, r = ns.shape
    hi = np.array([np.floor(dims[x] * dims[y] / dims[z] + 1e-6) for x, y, z in keys])
    # free coordinates: r rows of the null-space basis that are independent
    _, _, piv = sla.qr(ns.T, pivoting=True)
    free = np.sort(piv[:r])
    Nf = ns[free]
    ranges = [range(0, int(hi[j]) + 1) for j in free]
    total = int(np.prod([len(rg) for rg in ranges]))
    if total > cap:
        return []
    out = []
    for combo in itertools.product(*ranges):
        t = np.linalg.solve(Nf, np.array(combo, dtype=float) - sol[free])
        v = sol + ns @ t
        vr = np.rint(v)
        if np.max(np.abs(v - vr)) > 1e-6 or vr.min() < 0 or (vr > hi).any():
            continue
        N = assemble(vr)
        try:
            TableRing([str(i) for i in range(N.shape[0])], N, dims, validate=True, commutative=False)
        except AxiomError:
            continue
        out.append(N)
    return out


def _action_matrix(spec, rows, nm):
    """M[l, m] = <beta alpha_l, alpha_m> = <m l-bar, beta|_A> for a DHR sector beta."""
    base = spec.base
    row = spec.row(nm).vector()
    M = np.zeros((len(rows), len(rows)), dtype=np.int64)
    for a, i in enumerate(rows):
        bi = base.dual_index(i)
        for b, j in enumerate(rows):
            M[a, b] = int(base.fuse(j, bi) @ row)
    return M


def _invertible_actions(spec, rows, X, dims, names, actors, combo_cap=200000):
    """Permutations of the irreducibles induced by multiplication with named invertible sectors.

    Reciprocity alone can leave several candidates.  Generators of the ambient
    group are searched jointly; the remaining actions follow by composition.
    Among consistent choices the freest action (fewest orbits) is kept.
    """
    K = X.shape[1]
    if not actors:
        return {}
    amb = spec.ambient
    actor_names = [names[c] for c in actors]
    use_amb = amb is not None and all(n in amb for n in actor_names)

    def forced_for(nm):
        forced = {}
        if not use_amb:
            return forced
        for c2 in range(K):
            other = names[c2]
            if other is not None and other in amb:
                prod = amb.fuse(amb.index(nm), amb.index(other))
                if prod.sum() == 1:
                    tgt = amb.labels[int(np.argmax(prod))]
                    if tgt in names:
                        forced[c2] = names.index(tgt)
        return forced

    mats = {nm: _action_matrix(spec, rows, nm) for nm in actor_names}
    gens = []
    if use_amb:
        reached = {amb.index(spec.vacuum_name) if spec.vacuum_name in amb else 0}
        for nm in actor_names:
            a = amb.index(nm)
            if a in reached:
                continue
            gens.append(nm)
            frontier = list(reached)
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = int(np.argmax(amb.fuse(x, amb.index(g))))
                        if y not in reached:
                            reached.add(y)
                            nxt.append(y)
                frontier = nxt
    else:
        gens = list(actor_names)
    cands = {}
    for nm in gens:
        cands[nm] = _search_actions(X, dims, mats[nm], forced_for(nm))
        if not cands[nm]:
            raise FactorizationError(f"no consistent action of {nm} on the induced sectors")
    total = int(np.prod([len(v) for v in cands.values()]))
    if total > combo_cap:
        raise FactorizationError(f"{total} candidate invertible actions; too many to compare")
    best, best_orbits = None, None
    for combo in itertools.product(*(cands[g] for g in gens)):
        if any(_compose(p, q) != _compose(q, p) for p, q in itertools.combinations(combo, 2)):
            continue
        acts = dict(zip(gens, combo))
        if use_amb:
            # words in the generators give every other actor
            ident = tuple(range(K))
            elems = {amb.index(spec.vacuum_name) if spec.vacuum_name in amb else 0: ident}
            frontier = list(elems)
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = int(np.argmax(amb.fuse(x, amb.index(g))))
                        if y not in elems:
                            elems[y] = _compose(acts[g], elems[x])
                            nxt.append(y)
                frontier = nxt
            # the assignment must be a homomorphism of the ambient group
            ok = all(elems[int(np.argmax(amb.fuse(x, amb.index(g))))] == _compose(acts[g], p)
                     for x, p in elems.items() for g in gens)
            for nm in actor_names if ok else ():
                p = elems.get(amb.index(nm))
                if p is None:
                    ok = False
                    break
                P = np.zeros((K, K), dtype=np.int64)
                P[np.arange(K), p] = 1
                if not np.array_equal(X @ P @ X.T, mats[nm]):
                    ok = False
                    break
                acts[nm] = p
            if not ok:
                continue
        n_orb = _orbit_count(list(acts.values()), K)
        if best is None or n_orb < best_orbits:
            best, best_orbits = acts, n_orb
    if best is None:
        raise FactorizationError("no mutually consistent actions of the named invertible sectors")
    return {nm: list(best[nm]) for nm in actor_names}


def _compose_name(g: str, core: str, vacuum: str) -> str:
    return core if g == vacuum else f"{g}*{core}"


def decompose_induction(spec: ExtensionSpec, generators, depth: int = DEFAULT_DEPTH,
                        node_cap: int = 5_000_000, resolve: str = "raise") -> InductionReport:
    """Decompose the induced sectors on the closure of ``generators`` into irreducibles.

    With ``resolve="first"`` an ambiguity between minimal factorizations is
    settled by taking the first one in canonical order; the number of
    alternatives is kept in the report.  The default raises AmbiguityError.
    """
    if resolve not in ("raise", "first"):
        raise DomainError(f"resolve must be 'raise' or 'first', got {resolve!r}")
    base = spec.base
    gens = [_as_sector(base, g) for g in generators]
    rows, closed = induction_closure(base, gens, depth)
    V = _theta_vectors(spec, rows)
    G = V[:, rows]
    row_dims = base.dims[rows]

    named_names, named_cols, named_dims = [spec.vacuum_name], [V[:, 0]], [1.0]
    absent = []
    for nm, row in spec.sectors.items():
        if nm == spec.vacuum_name:
            continue
        col = _row_vector(row, rows)
        if not col.any():
            absent.append(nm)
            continue
        named_names.append(nm)
        named_cols.append(col)
        named_dims.append(row.dimension() / spec.index)
    F = np.stack(named_cols, axis=1)
    k = F.shape[1]

    sols = factor_gram(G, row_dims, fixed=F, fixed_dims=np.array(named_dims), node_cap=node_cap)
    P, valid = _product_tensor(base, rows)
    good = [s for s in sols if _homomorphism_residual(s.X, P, valid) < 1e-6]
    if not good:
        raise FactorizationError(
            f"no factorization of the {len(rows)}x{len(rows)} Gram block is compatible with fusion")
    if len(good) > 1 and resolve == "raise":
        raise AmbiguityError(
            f"{len(good)} minimal decompositions of the induced sectors disagree", [s.X for s in good])
    sol = good[0]
    X, dims = sol.X, sol.dims
    K = X.shape[1]
    names: list = named_names + [None] * (K - k)
    notes = [f"named sector {nm} does not occur in the closure" for nm in absent]

    # recognise new columns through ambient branching rows
    for nm, row in spec.ambient_rows.items():
        if nm in names:
            continue
        col = _row_vector(row, rows)
        dim = row.dimension() / spec.index
        for c in range(k, K):
            if names[c] is None and np.array_equal(X[:, c], col) and abs(dims[c] - dim) < DIM_TOL * max(1, dim):
                names[c] = nm
                break

    # actions of invertible sectors with known rows
    amb = spec.ambient
    actors = [c for c in range(K) if names[c] is not None and names[c] != spec.vacuum_name
              and abs(dims[c] - 1) < DIM_TOL]
    actions = _invertible_actions(spec, rows, X, dims, names, actors)
    perms = list(actions.values())
    group = _group_closure(perms, K)

    # names: irreducible images of generators, then the supplied new names, then x1, x2, ...
    fresh = iter(list(spec.new_names))
    counter = itertools.count(1)

    def propagate(core_col):
        core = names[core_col]
        for nm, pi in actions.items():
            tgt = pi[core_col]
            if names[tgt] is None:
                names[tgt] = _compose_name(nm, core, spec.vacuum_name)

    order = []
    for g in gens:
        for i, _ in g.index_items():
            order.extend(np.flatnonzero(X[rows.index(i)]).tolist())
    order.extend(range(K))
    for g in gens:
        if g.is_simple:
            r = rows.index(g.index_items()[0][0])
            nz = np.flatnonzero(X[r])
            if len(nz) == 1 and X[r, nz[0]] == 1 and names[nz[0]] is None:
                names[nz[0]] = f"alpha({base.label_str(base.labels[g.index_items()[0][0]])})"
                propagate(nz[0])
    for c in order:
        if names[c] is None:
            nm = next(fresh, None)
            names[c] = nm if nm is not None else f"x{next(counter)}"
            propagate(c)
        elif c >= k:
            propagate(c)

    # fusion of the irreducibles
    if amb is not None and all(n in amb for n in names):
        idx = [amb.index(n) for n in names]
        N = np.array([[amb.fuse(a, b)[idx] for b in idx] for a in idx], dtype=np.int64)
        full = np.array([[amb.fuse(a, b).sum() for b in idx] for a in idx])
        if not np.array_equal(N.sum(axis=2), full):
            N, completions = _solve_fusion(X, P, valid, group, K, dims)
            notes.append("ambient ring does not close on the induced sectors; fusion solved from reciprocity")
    else:
        N, completions = _solve_fusion(X, P, valid, group, K, dims)
        if completions > 1:
            notes.append(f"{completions} fusion rings are compatible with the data; only common coefficients kept")
    ring = InducedRing(names, N, dims, name=f"induced[{spec.name}]")
    if ring.complete:
        try:
            TableRing(names, N, dims, validate=True, commutative=False)
        except AxiomError as exc:
            raise FactorizationError(f"solved induced fusion violates the ring axioms: {exc}") from exc
    else:
        notes.append(f"{int((N < 0).sum())} fusion coefficients are not determined by the data")
    if len(good) > 1:
        notes.append(f"{len(good)} minimal decompositions; the first in canonical order is used")
    rep = InductionReport(spec, rows, G, X, names, dims, k, ring, actions, closed, len(good), notes)
    rep.check()
    return rep


def intermediate_check(report: InductionReport, candidate) -> Sector:
    """Sector ``rho rho-bar`` of the intermediate subfactor carried by ``alpha_candidate``.

    For a base label ``v`` this is ``alpha_{v v-bar}`` divided by the sum of the
    named invertibles it contains.  For the name of an induced irreducible
    ``x`` it is simply ``x x-bar``.
    """
    ring = report.ring
    if isinstance(candidate, str) and candidate in report.names:
        x = ring.simple(candidate)
        return x * x.conjugate()
    base = report.spec.base
    v = _as_sector(base, candidate)
    s = report.alpha(v * v.conjugate())
    stab = [nm for nm in report.actions if s.multiplicity(nm) > 0]
    H = [list(range(len(report.names)))] + [report.actions[nm] for nm in stab]
    seen, out = set(), {}
    for c, m in s.index_items():
        if c in seen:
            continue
        orb = {h[c] for h in H}
        seen |= orb
        out[c] = m
    X = Sector(ring, out)
    # verify (sum over H) * X reproduces s using the permutation actions
    acc = np.zeros(len(ring), dtype=np.int64)
    for h in H:
        for c, m in X.index_items():
            acc[h[c]] += m
    if not np.array_equal(acc, s.vector()):
        raise DomainError(f"alpha of {candidate} does not factor through its invertible stabilizer")
    return X


# ---------------------------------------------------------------------------
# bookkeeping identities


@dataclass
class LocalityReport:
    integer_weights: bool
    conjugation_invariant: bool
    product_sums: bool | None
    offending: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.integer_weights and self.conjugation_invariant and self.product_sums is not False


def locality_precheck(spec: ExtensionSpec) -> LocalityReport:
    base = spec.base
    bad = []
    for lab, _ in spec.theta.items():
        h = base.conformal_weight(lab)
        if h is None:
            raise DomainError("the base ring carries no conformal weights")
        if Fraction(h).denominator != 1:
            bad.append((base.label_str(lab), Fraction(h)))
    conj = spec.theta.conjugate() == spec.theta
    product = None
    if isinstance(base, ProductRing):
        product = not bad
    return LocalityReport(not bad, conj, product, bad)


@dataclass
class IndexReport:
    index: float
    mu_base: float
    mu_extension: float
    expected: float | None = None
    relative_error: float | None = None


def index_and_mu(spec: ExtensionSpec, mu_B=None, mu_base: float | None = None, tol: float = MU_TOL) -> IndexReport:
    """``[B:A] = d_theta`` and ``mu_B = mu_A / [B:A]^2``; checked against ``mu_B`` when given."""
    d = spec.index
    muA = float(np.sum(spec.base.dims ** 2)) if mu_base is None else float(mu_base)
    muB = muA / d**2
    rep = IndexReport(d, muA, muB)
    if mu_B is not None:
        expected = 1.0 if mu_B == "holomorphic" else float(mu_B)
        rel = abs(muB - expected) / expected
        rep.expected, rep.relative_error = expected, rel
        if rel > tol:
            raise IdentityError(f"mu_A = mu_B [B:A]^2 fails: {muA} vs {expected} * {d}^2 (rel. error {rel:.3g})")
    return rep


def orbifold_identity(mu_net: float, mu_fixed_points: float, order: int, tol: float = MU_TOL) -> float:
    """Relative defect of ``mu_{A^G} = |G|^2 mu_A``; raises if above ``tol``."""
    rel = abs(mu_fixed_points - order**2 * mu_net) / mu_fixed_points
    if rel > tol:
        raise IdentityError(f"orbifold identity fails with relative error {rel:.3g}")
    return rel


@dataclass
class NormalityReport:
    normal: bool
    pairing: dict
    reason: str = ""


def normality_check(spec: ExtensionSpec) -> NormalityReport:
    """Is the spectrum of the shape sum_l (l, F(l)) with F a bijection of labels?"""
    ring = spec.base
    if not isinstance(ring, ProductRing):
        raise DomainError("normality is defined for extensions of a product")
    pairing, right_seen = {}, set()
    for (a, b), m in spec.theta.items():
        if m != 1:
            return NormalityReport(False, {}, f"multiplicity {m} at ({a}, {b})")
        if a in pairing:
            return NormalityReport(False, {}, f"left label {a} pairs twice")
        if b in right_seen:
            return NormalityReport(False, {}, f"right label {b} pairs twice")
        pairing[a] = b
        right_seen.add(b)
    if len(pairing) != len(ring.left) or len(right_seen) != len(ring.right):
        return NormalityReport(False, pairing, "pairing does not cover every label")
    return NormalityReport(True, pairing)


# ---------------------------------------------------------------------------
# simple currents


def simple_current_spec(ring: VerlindeRing, order: int, **kw) -> ExtensionSpec:
    """Extension by the order-``order`` subgroup of simple currents of SU(n)_k."""
    alg = ring.algebra
    vac = ring.labels[0]
    orb = orbit(vac, order)
    for w in orb:
        h = conformal_weight(w)
        if h.denominator != 1:
            raise LocalityError(f"simple current {w} of {alg} has conformal weight {h}, not an integer")
    theta = Sector(ring, {ring.index(w): 1 for w in orb})
    return ExtensionSpec(ring, theta, name=kw.pop("name", f"{alg}/Z{order}"), **kw)


@dataclass(eq=False)
class SimpleCurrentExtension:
    """Representation ring of the simple-current extension, with fixed points resolved."""

    algebra: AlgebraId
    order: int
    orbits: list          # orbits of local weights
    labels: list          # (orbit index, copy) pairs
    ring: TableRing
    S: np.ndarray
    T: np.ndarray
    branching: dict       # label -> Sector over the base ring
    solutions: int        # number of admissible fixed-point phases
    spec: ExtensionSpec

    def label(self, weight, copy: int = 0) -> str:
        w = self.spec.base.labels[self.spec.base.index(weight)]
        for a, orb in enumerate(self.orbits):
            if w in orb:
                return self.ring.labels[self.labels.index((a, copy))]
        raise DomainError(f"{weight} is not local")


def _eta_candidates(q: int, sf: int):
    free = sorted({min(t, sf - t) for t in range(1, sf)})
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    for combo in itertools.product(range(q), repeat=len(free)):
        yield {t: roots[combo[free.index(min(t, sf - t))]] for t in range(1, sf)}


def simple_current_extension(algebra: AlgebraId, order: int, names: Mapping | None = None,
                             q: int = 120) -> SimpleCurrentExtension:
    """Fusion ring of the Z_order simple-current extension of SU(n)_k.

    Orbits of local weights become sectors; an orbit with stabilizer of
    order ``s`` splits into ``s`` sectors.  The single fixed-point block of
    the extended S-matrix is an unknown phase per character of the
    stabilizer; it is found by scanning ``q``-th roots of unity subject to
    unitarity, ``(S T)^3 = S^2``, ``S^2`` a permutation and integral
    non-negative Verlinde coefficients.

    ``names`` maps a base weight string to a display name; fixed-point
    copies get the suffixes 1, 2, ... (``{"1,1,1,1": "b"}`` gives b1..b5).
    """
    ring = verlinde_ring(algebra)
    spec0 = simple_current_spec(ring, order)
    S = s_matrix(algebra)
    W = S.weights
    n = algebra.n
    step = n // order
    J0 = simple_current(W[0], step)
    hJ = conformal_weight(J0)
    local = [w for w in W if (hJ + conformal_weight(w) - conformal_weight(simple_current(w, step))).denominator == 1]
    seen, orbits = set(), []
    for w in local:
        if w not in seen:
            o = orbit(w, order)
            seen.update(o)
            orbits.append(o)
    labels = [(a, i) for a, o in enumerate(orbits) for i in range(order // len(o))]
    fixed = [a for a, o in enumerate(orbits) if len(o) < order]
    if len(fixed) > 1:
        raise DomainError("more than one fixed-point orbit is not supported")
    idx = [S.index(o[0]) for o in orbits]
    stab = [order // len(o) for o in orbits]
    nl = len(labels)
    base_S = np.zeros((nl, nl), dtype=complex)
    for x, (a, _) in enumerate(labels):
        for y, (b, _) in enumerate(labels):
            base_S[x, y] = order / (stab[a] * stab[b]) * S.entries[idx[a], idx[b]]
    hs = [min(conformal_weight(w) for w in orbits[a]) for a, _ in labels]
    c = central_charge(algebra)
    T = np.exp(2j * np.pi * np.array([float(h - c / 24) for h in hs]))

    def admissible(St):
        if np.max(np.abs(St @ St.conj().T - np.eye(nl))) > 1e-8:
            return None
        S2 = St @ St
        if np.max(np.abs(np.abs(S2) - np.rint(np.abs(S2)))) > 1e-8:
            return None
        ST = St * T[None, :]
        if np.max(np.abs(ST @ ST @ ST - S2)) > 1e-7:
            return None
        Nv = np.einsum("ad,bd,cd,d->abc", St, St, St.conj(), 1 / St[0])
        if np.max(np.abs(Nv.imag)) > 1e-6:
            return None
        R = np.rint(Nv.real)
        if np.max(np.abs(Nv.real - R)) > 1e-6 or R.min() < 0:
            return None
        return R.astype(np.int64)

    sols = []
    if not fixed:
        N = admissible(base_S)
        if N is not None:
            sols.append((N, base_S))
    else:
        f = fixed[0]
        sf = stab[f]
        fx = [x for x, (a, _) in enumerate(labels) if a == f]
        for eta in _eta_candidates(q, sf):
            St = base_S.copy()
            for x in fx:
                for y in fx:
                    i, j = labels[x][1], labels[y][1]
                    St[x, y] += order / sf**2 * sum(
                        np.exp(2j * np.pi * (i - j) * t / sf) * eta[t] for t in range(1, sf))
            N = admissible(St)
            if N is not None:
                sols.append((N, St))
    if not sols:
        raise NumericalError(f"no admissible fixed-point resolution for {algebra} / Z{order}")
    N, St = sols[0]

    names = dict(names or {})
    disp = []
    for a, i in labels:
        key = str(orbits[a][0])
        for w in orbits[a]:
            if str(w) in names:
                key = str(w)
                break
        nm = names.get(key, str(orbits[a][0]))
        if stab[a] > 1:
            nm = f"{nm}{i + 1}" if key in names else f"{nm}_{i}"
        disp.append(nm)
    if disp[0] != "1" and str(orbits[0][0]) not in names:
        disp[0] = "1"
    dims = np.real(St[0] / St[0, 0])
    ext = TableRing(disp, N, dims, name=f"{algebra}/Z{order}", kind="extension",
                    conformal_weights={nm: h for nm, h in zip(disp, hs)})
    branching = {nm: Sector(ring, {ring.index(w): 1 for w in orbits[a]}) for nm, (a, _) in zip(disp, labels)}
    spec = ExtensionSpec(ring, spec0.theta, ambient=ext,
                         ambient_rows={nm: r for nm, r in branching.items() if nm != disp[0]},
                         name=spec0.name)
    return SimpleCurrentExtension(algebra, order, orbits, labels, ext, St, T, branching, len(sols), spec)


# ---------------------------------------------------------------------------
# sectors of B from a modular invariant


def branching_from_invariant(S: SMatrix, Z: np.ndarray) -> list[Sector]:
    """Rows ``b`` with ``Z = sum_beta b_beta b_beta^T`` for a type I invariant."""
    ring = verlinde_ring(S.algebra)
    Z = np.asarray(Z, dtype=np.int64)
    support = np.flatnonzero(Z.any(axis=1))
    sub = Z[np.ix_(support, support)]
    theta_dim = float(Z[0] @ S.dimensions)
    sol = factor_gram(sub, None, all_minimal=False)[0]
    rows = []
    for c in range(sol.ncols):
        v = np.zeros(len(ring), dtype=np.int64)
        v[support] = sol.X[:, c]
        rows.append(Sector.from_vector(ring, v))
    # vacuum first, then by dimension of the B-sector and labels
    rows.sort(key=lambda r: (r.multiplicity(ring.labels[0]) == 0, round(r.dimension() / theta_dim, 9), str(r)))
    if any(r.dimension() < theta_dim * (1 - 1e-6) for r in rows):
        raise FactorizationError("a branching row has dimension below the index: the invariant is not of type I")
    return rows


def ambient_from_branching(S: SMatrix, rows: Sequence[Sector], names: Sequence[str]) -> TableRing:
    """Fusion ring of B from the intertwining relation ``b S = S^B b`` and Verlinde's formula."""
    b = np.array([r.vector() for r in rows], dtype=float)
    SB = b @ S.entries @ b.T @ np.linalg.inv(b @ b.T)
    if np.max(np.abs(SB @ SB.conj().T - np.eye(len(rows)))) > 1e-8:
        raise NumericalError("branching rows do not intertwine the S-matrix unitarily")
    Nv = np.einsum("ad,bd,cd,d->abc", SB, SB, SB.conj(), 1 / SB[0])
    R = np.rint(Nv.real)
    if np.max(np.abs(Nv - R)) > 1e-6 or R.min() < 0:
        raise NumericalError("ambient fusion from branching rows is not integral")
    return TableRing(list(names), R.astype(np.int64), np.real(SB[0] / SB[0, 0]), name="ambient")


def name_cyclic(ambient: TableRing, generator: int, symbol: str) -> list[str]:
    """Names ``symbol^j`` for a cyclic ambient ring generated by ``ambient.labels[generator]``.

    Exponents are printed in the symmetric range, e.g. ``w^-1`` for ``w^9`` in Z_10.
    """
    m = len(ambient)
    out = [None] * m
    cur = 0
    for j in range(m):
        e = j if j <= m // 2 else j - m
        out[cur] = "1" if e == 0 else (symbol if e == 1 else f"{symbol}^{e}")
        cur = int(np.argmax(ambient.fuse(cur, generator)))
    if None in out:
        raise DomainError(f"{ambient.labels[generator]} does not generate the ambient ring")
    return out
