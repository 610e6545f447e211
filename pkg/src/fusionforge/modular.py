"""Kac-Peterson S-matrix, quantum dimensions, mu-index and modular invariants."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CapacityError, DomainError, NumericalError
from .kacmoody import (
    DEFAULT_WEIGHT_CAP,
    AlgebraId,
    Weight,
    central_charge,
    conformal_weight,
    conjugate,
    enumerate_weights,
    root_system,
)

UNITARITY_TOL = 1e-9
INTEGRALITY_TOL = 1e-6


@dataclass(eq=False)
class SMatrix:
    algebra: AlgebraId
    weights: list[Weight]
    entries: np.ndarray
    precision: float = INTEGRALITY_TOL
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {w: i for i, w in enumerate(self.weights)}

    def index(self, w) -> int:
        try:
            return self._index[w]
        except KeyError:
            raise DomainError(f"{w!r} is not a weight of {self.algebra}") from None

    def __getitem__(self, pair):
        a, b = pair
        return self.entries[self.index(a), self.index(b)]

    @property
    def size(self) -> int:
        return len(self.weights)

    @cached_property
    def dimensions(self) -> np.ndarray:
        row = self.entries[0].real
        return row / row[0]

    def unitarity_defect(self) -> float:
        S = self.entries
        return float(np.max(np.abs(S @ S.conj().T - np.eye(len(S)))))

    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.T)))


@dataclass(eq=False)
class TMatrix:
    algebra: AlgebraId
    weights: list[Weight]
    conformal_weights: list  # exact Fractions
    phases: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return self.phases


_cache: dict[AlgebraId, SMatrix] = {}
_cache_lock = threading.Lock()


def _rho_shifted_partitions(weights: list[Weight], n: int) -> np.ndarray:
    # coordinates x_i = sum_{j >= i} (l_j + 1), x_n = 0 in the orthonormal basis of R^n
    L = np.array([w.labels for w in weights], dtype=np.float64) + 1.0
    X = np.zeros((len(weights), n))
    X[:, : n - 1] = np.cumsum(L[:, ::-1], axis=1)[:, ::-1]
    return X


def _weyl_alternating_block(Xa: np.ndarray, Xb: np.ndarray, n: int, kn: int) -> np.ndarray:
    """sum_w eps(w) exp(-2 pi i (w x, y) / (k+n)) for all pairs, as n x n determinants."""
    c = -2j * np.pi / kn
    # trace-free projection contributes a scalar phase per pair
    sa, sb = Xa.sum(axis=1), Xb.sum(axis=1)
    E = np.exp(c * Xa[:, None, :, None] * Xb[None, :, None, :])
    det = np.linalg.det(E)
    return det * np.exp(-c * np.outer(sa, sb) / n)


def s_matrix(algebra: AlgebraId, cap: int = DEFAULT_WEIGHT_CAP, tol: float = UNITARITY_TOL,
             block: int = 64) -> SMatrix:
    """S-matrix of SU(n)_k in the canonical weight order, first row real positive."""
    if algebra.series != "A":
        raise DomainError("S-matrices are implemented for type A only")
    with _cache_lock:
        cached = _cache.get(algebra)
    if cached is not None:
        return cached
    weights = enumerate_weights(algebra)
    if len(weights) > cap:
        raise CapacityError(f"{algebra} has {len(weights)} weights, cap is {cap}")
    n = algebra.n
    kn = algebra.level + n
    X = _rho_shifted_partitions(weights, n)
    M = np.empty((len(weights), len(weights)), dtype=np.complex128)
    for start in range(0, len(weights), block):
        M[start:start + block] = _weyl_alternating_block(X[start:start + block], X, n, kn)
    row0 = M[0]
    phase = row0[0] / abs(row0[0])
    M *= np.conj(phase) / np.sqrt(np.sum(np.abs(row0) ** 2))
    S = SMatrix(algebra, weights, M)
    if S.unitarity_defect() > tol:
        raise NumericalError(f"S-matrix of {algebra} fails unitarity: {S.unitarity_defect():.3g}")
    with _cache_lock:
        # first writer wins; values are identical anyway
        S = _cache.setdefault(algebra, S)
    return S


def s_matrix_first_row(algebra: AlgebraId) -> np.ndarray:
    """Only the vacuum row, without building the full matrix."""
    weights = enumerate_weights(algebra)
    n = algebra.n
    X = _rho_shifted_partitions(weights, n)
    row = _weyl_alternating_block(X[:1], X, n, algebra.level + n)[0]
    row = row * np.conj(row[0] / abs(row[0]))
    return (row / np.sqrt(np.sum(np.abs(row) ** 2))).real


def t_matrix(algebra: AlgebraId) -> TMatrix:
    weights = enumerate_weights(algebra)
    c = central_charge(algebra)
    hs = [conformal_weight(w) for w in weights]
    phases = np.exp(2j * np.pi * np.array([float(h - c / 24) for h in hs]))
    return TMatrix(algebra, weights, hs, phases)


def quantum_dimension_s(S: SMatrix, w: Weight) -> float:
    return float(S.dimensions[S.index(w)])


def quantum_dimension_weyl(w: Weight) -> float:
    """Product over positive roots of sin(pi (l+rho, a)/(k+h)) / sin(pi (rho, a)/(k+h))."""
    return float(quantum_dimensions_weyl(w.algebra, [w])[0])


def quantum_dimensions_weyl(algebra: AlgebraId, weights=None) -> np.ndarray:
    R = root_system(algebra.series, algebra.rank)
    if weights is None:
        weights = enumerate_weights(algebra)
    kh = algebra.level + R.dual_coxeter
    roots = R.root_matrix.T  # rank x |roots|
    lam = np.array([w.labels for w in weights], dtype=np.float64) + 1.0
    num = np.sin(np.pi * (lam @ roots) / kh)
    den = np.sin(np.pi * roots.sum(axis=0) / kh)
    return np.prod(num / den, axis=1)


def mu_index(obj) -> float:
    """Global dimension sum d^2; for an S-matrix also checked against 1/S_00^2."""
    if isinstance(obj, SMatrix):
        d = obj.dimensions
        mu = float(np.sum(d**2))
        alt = float(1.0 / obj.entries[0, 0].real ** 2)
        if abs(mu - alt) > 1e-6 * max(1.0, mu):
            raise NumericalError(f"mu-index routes disagree: {mu} vs {alt}")
        return mu
    if isinstance(obj, AlgebraId):
        return float(np.sum(quantum_dimensions_weyl(obj) ** 2))
    dims = obj.dims if hasattr(obj, "dims") else obj.dimensions
    return float(np.sum(np.asarray(dims, dtype=float) ** 2))


def charge_conjugation_defect(S: SMatrix) -> float:
    S2 = S.entries @ S.entries
    C = np.zeros_like(S2)
    for i, w in enumerate(S.weights):
        C[i, S.index(conjugate(w))] = 1.0
    return float(np.max(np.abs(S2 - C)))


def _rref(M: np.ndarray, tol: float = 1e-9):
    M = M.copy()
    rows, cols = M.shape
    r, piv = 0, []
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(M[r:, c])))
        if abs(M[p, c]) < tol:
            continue
        M[[r, p]] = M[[p, r]]
        M[r] /= M[r, c]
        for q in range(rows):
            if q != r:
                M[q] -= M[q, c] * M[r]
        piv.append(c)
        r += 1
    return M[:r], piv


def modular_invariants(S: SMatrix, T: TMatrix | None = None, max_entry: int = 2, max_dim: int = 32,
                       node_cap: int = 10**7) -> list[np.ndarray]:
    """Physical modular invariants: Z >= 0 integral, Z_00 = 1, [Z, S] = [Z, T] = 0, entries <= max_entry.

    T-invariance restricts Z to pairs with h_i - h_j integral; the commutant
    with S on those positions is a linear space which is put in reduced row
    echelon form and searched by branch and bound on the pivot entries.
    """
    W = S.weights
    n = len(W)
    if T is None:
        T = t_matrix(S.algebra)
    if list(T.weights) != list(W):
        raise DomainError("S and T are indexed by different weights")
    hs = T.conformal_weights
    pos = [(i, j) for i in range(n) for j in range(n) if (hs[i] - hs[j]).denominator == 1]
    Sm = S.entries
    # Gram matrix of the maps E_ij -> [E_ij, S]; S unitary and symmetric gives it in closed form
    I = np.array([p[0] for p in pos])
    J = np.array([p[1] for p in pos])
    Nm = 2 * np.eye(len(pos)) - 2 * np.real(Sm[np.ix_(I, I)] * np.conj(Sm[np.ix_(J, J)]))
    ev, vec = np.linalg.eigh(Nm)
    ns = vec[:, ev < 1e-8 * max(1.0, ev.max())]
    d = ns.shape[1]
    if d > max_dim:
        raise CapacityError(f"commutant has dimension {d} > {max_dim}")
    B, piv = _rref(ns.T)
    out = []
    nodes = [0]
    neg = np.minimum(B, 0)
    posv = np.maximum(B, 0)
    tail_lo = np.vstack([np.cumsum(neg[::-1], axis=0)[::-1], np.zeros((1, len(pos)))]) * max_entry
    tail_hi = np.vstack([np.cumsum(posv[::-1], axis=0)[::-1], np.zeros((1, len(pos)))]) * max_entry
    p00 = pos.index((0, 0))

    def rec(k, partial):
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise CapacityError("modular invariant search exceeded its node budget")
        if k == d:
            r = np.rint(partial)
            if np.max(np.abs(partial - r)) < 1e-6 and r.min() >= 0 and r.max() <= max_entry and r[p00] == 1:
                Z = np.zeros((n, n), dtype=np.int64)
                for p, (i, j) in enumerate(pos):
                    Z[i, j] = int(r[p])
                out.append(Z)
            return
        for v in range(max_entry + 1):
            cur = partial + v * B[k]
            if (cur + tail_hi[k + 1] < -1e-6).any() or (cur + tail_lo[k + 1] > max_entry + 1e-6).any():
                continue
            rec(k + 1, cur)

    rec(0, np.zeros(len(pos)))
    ph = T.phases
    for Z in out:
        if np.max(np.abs(Sm @ Z - Z @ Sm)) > 1e-6 or np.max(np.abs(ph[:, None] * Z - Z * ph[None, :])) > 1e-6:
            raise NumericalError("commutant enumeration produced a matrix that is not invariant")
    return out
