"""Factor a Gram matrix as ``G = X X^T`` over the non-negative integers.

Rows are processed in order.  Each row either reuses columns created by
earlier rows (forced by the inner products already fixed) or opens new
columns whose squared multiplicities make up the rest of the diagonal.
The search minimizes the number of columns and breaks the symmetry between
columns that are indistinguishable so far.  Optional row dimensions prune
candidates: every column stands for a sector of dimension >= 1 and
``X @ dims_col == dims_row`` must be solvable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguityError, CapacityError, FactorizationError

DIM_TOL = 1e-6


@dataclass
class GramFactorization:
    X: np.ndarray          # rows x columns, non-negative integers
    dims: np.ndarray | None  # per column, when row dimensions were supplied

    @property
    def ncols(self) -> int:
        return self.X.shape[1]


def square_partitions(s: int, max_part: int | None = None):
    """Non-increasing tuples of positive integers whose squares sum to ``s``, fewest parts first."""
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        m = min(cap, int(math.isqrt(rest)))
        for p in range(m, 0, -1):
            acc.append(p)
            rec(rest - p * p, p, acc)
            acc.pop()

    rec(s, max_part if max_part is not None else s, [])
    out.sort(key=len)
    return out


class _Search:
    def __init__(self, G, row_dims, fixed, fixed_dims, node_cap, collect):
        self.G = np.asarray(G, dtype=np.int64)
        self.n = self.G.shape[0]
        self.row_dims = None if row_dims is None else np.asarray(row_dims, dtype=float)
        self.node_cap = node_cap
        self.collect = collect
        self.nodes = 0
        self.best = None
        self.solutions = []
        ncap = int(np.trace(self.G)) + (0 if fixed is None else fixed.shape[1]) + 1
        self.X = np.zeros((self.n, ncap), dtype=np.int64)
        self.dims = np.full(ncap, np.nan)
        self.ncols = 0
        self.fixed = 0
        if fixed is not None and fixed.shape[1]:
            # pre-seeded columns (known irreducibles) keep their full column everywhere
            k = fixed.shape[1]
            self.X[:, :k] = fixed
            self.fixed = k
            self.ncols = k
            if fixed_dims is not None:
                self.dims[:k] = fixed_dims

    # enumerate the part of row i carried by existing columns
    def _row_options(self, i):
        G, X = self.G, self.X
        nc = self.ncols
        free = list(range(self.fixed, nc))
        prev = X[:i, :nc]
        target = G[i, :i].copy()
        fixed_part = X[i, :self.fixed]
        base = prev[:, :self.fixed] @ fixed_part if self.fixed else np.zeros(i, dtype=np.int64)
        budget = int(G[i, i] - fixed_part @ fixed_part)
        if budget < 0 or (base > target).any():
            return []
        allowed = [c for c in free if not ((prev[:, c] > 0) & (target == 0)).any()]
        # twins: identical history so far; enforce non-increasing multiplicities
        groups = {}
        twin_prev = {}
        for c in allowed:
            key = prev[:, c].tobytes() + self.dims[c:c + 1].tobytes()
            if key in groups:
                twin_prev[c] = groups[key]
            groups[key] = c
        cols = [prev[:, c] for c in allowed]
        # suffix coverage to prune: can remaining columns still reach target row j?
        cover = np.zeros((len(allowed) + 1, i), dtype=bool)
        for t in range(len(allowed) - 1, -1, -1):
            cover[t] = cover[t + 1] | (cols[t] > 0)
        out = []
        choice = {}

        def rec(t, dots, used):
            self.nodes += 1
            if self.nodes > self.node_cap:
                raise CapacityError("Gram factorization exceeded its node budget")
            deficit = target - dots
            if t == len(allowed):
                if not deficit.any():
                    out.append((dict(choice), used))
                return
            if ((deficit > 0) & ~cover[t]).any():
                return
            c = allowed[t]
            col = cols[t]
            hi = int(math.isqrt(budget - used))
            pos = col > 0
            if pos.any():
                hi = min(hi, int(np.min(deficit[pos] // col[pos])))
            if c in twin_prev:
                hi = min(hi, choice.get(twin_prev[c], 0))
            for v in range(hi, -1, -1):
                if v:
                    choice[c] = v
                else:
                    choice.pop(c, None)
                rec(t + 1, dots + v * col, used + v * v)
            choice.pop(c, None)

        rec(0, base.copy(), 0)
        # prefer options that reuse the most multiplicity (fewest new columns)
        out.sort(key=lambda o: -o[1])
        return [(o, budget - used) for o, used in out]

    def _dims_ok(self, i, new_parts):
        if self.row_dims is None:
            return True, None
        X, nc = self.X, self.ncols
        row = X[i, :nc]
        known = ~np.isnan(self.dims[:nc])
        acc = float(row[known] @ self.dims[:nc][known])
        unknown = [c for c in range(nc) if row[c] and not known[c]]
        rest = self.row_dims[i] - acc
        mult_unknown = sum(int(row[c]) for c in unknown) + sum(new_parts)
        if rest < mult_unknown - DIM_TOL * max(1.0, abs(self.row_dims[i])):
            return False, None
        if not unknown and len(new_parts) == 0:
            return abs(rest) <= DIM_TOL * max(1.0, abs(self.row_dims[i])), None
        if len(unknown) == 1 and not new_parts:
            d = rest / row[unknown[0]]
            return d >= 1 - DIM_TOL, (unknown, [d])
        if not unknown and len(set(new_parts)) == 1:
            # equal multiplicities: columns are interchangeable so far; split evenly
            d = rest / sum(new_parts)
            return d >= 1 - DIM_TOL, ("new", d)
        return True, None

    def run(self, i=0):
        if self.best is not None and self.ncols > self.best:
            return
        if i == self.n:
            if self.row_dims is not None and not self._final_dims():
                return
            if self.best is None or self.ncols < self.best:
                self.best = self.ncols
                self.solutions = []
            self.solutions.append((self.X[:, :self.ncols].copy(), self.dims[:self.ncols].copy()))
            if not self.collect:
                raise _Done
            return
        for choice, rest in self._row_options(i):
            snapshot_n = self.ncols
            for c, v in choice.items():
                self.X[i, c] = v
            parts_list = square_partitions(rest) if rest else [()]
            for parts in parts_list:
                if self.best is not None and self.ncols + len(parts) > self.best:
                    continue
                for p in parts:
                    self.X[i, self.ncols] = p
                    self.ncols += 1
                ok, upd = self._dims_ok(i, ())
                saved = self.dims.copy()
                if ok and upd is not None:
                    if upd[0] == "new":
                        self.dims[snapshot_n:self.ncols] = upd[1]
                    else:
                        self.dims[upd[0]] = upd[1]
                if ok:
                    self.run(i + 1)
                self.dims = saved
                for _ in parts:
                    self.ncols -= 1
                    self.X[i, self.ncols] = 0
            for c in choice:
                self.X[i, c] = 0
            self.ncols = snapshot_n

    def _final_dims(self):
        X = self.X[:, :self.ncols].astype(float)
        unknown = np.isnan(self.dims[:self.ncols])
        if unknown.any():
            known = ~unknown
            rhs = self.row_dims - X[:, known] @ self.dims[:self.ncols][known]
            sol, *_ = np.linalg.lstsq(X[:, unknown], rhs, rcond=None)
            self.dims[np.flatnonzero(unknown)] = sol
        d = self.dims[:self.ncols]
        if (d < 1 - DIM_TOL).any():
            return False
        err = np.abs(X @ d - self.row_dims)
        return bool((err <= DIM_TOL * np.maximum(1.0, np.abs(self.row_dims))).all())


class _Done(Exception):
    pass


def _canonical(X, dims):
    order = sorted(range(X.shape[1]), key=lambda c: (tuple(-X[:, c]), c))
    return X[:, order], (None if dims is None else dims[order])


def factor_gram(G, row_dims=None, *, fixed=None, fixed_dims=None, node_cap: int = 5_000_000,
                all_minimal: bool = True) -> list[GramFactorization]:
    """All minimal factorizations ``G = X X^T`` (up to column order).

    ``fixed`` pre-seeds known columns (e.g. named sectors) which are kept;
    only new columns are searched for.  Raises FactorizationError if none exist.
    """
    G = np.asarray(G, dtype=np.int64)
    if G.shape[0] == 0:
        return [GramFactorization(np.zeros((0, 0), dtype=np.int64), np.zeros(0))]
    if not np.array_equal(G, G.T):
        raise FactorizationError("Gram matrix is not symmetric")
    if fixed is not None:
        fixed = np.asarray(fixed, dtype=np.int64)
        R = G - fixed @ fixed.T
        if (R < 0).any() or (np.diag(R) < 0).any():
            bad = np.argwhere(R < 0)[0]
            raise FactorizationError(f"named sectors over-count the Gram matrix at rows {tuple(bad)}")
    s = _Search(G, row_dims, fixed, fixed_dims, node_cap, all_minimal)
    try:
        s.run()
    except _Done:
        pass
    if not s.solutions:
        raise FactorizationError("no non-negative integer factorization is consistent with the data")
    seen = {}
    for X, d in s.solutions:
        k = s.fixed
        Xn, dn = _canonical(X[:, k:], None if row_dims is None else d[k:])
        full = np.hstack([X[:, :k], Xn])
        dims = None if row_dims is None else np.concatenate([d[:k], dn])
        seen.setdefault(full.tobytes(), GramFactorization(full, dims))
    return list(seen.values())


def unique_factorization(G, row_dims=None, **kw) -> GramFactorization:
    sols = factor_gram(G, row_dims, **kw)
    if len(sols) > 1:
        raise AmbiguityError(f"{len(sols)} inequivalent minimal factorizations", sols)
    return sols[0]
