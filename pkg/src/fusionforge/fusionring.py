"""Fusion rings and their sector semiring.

Four backends share one interface: Verlinde rings built from an S-matrix,
explicit tables (pointed groups, induced rings, user JSON), and products.
Every ring exposes ``fuse(i, j)``, the vector ``N_{ij}^k`` over ``k``.
"""
from __future__ import annotations

import itertools
import json
import threading
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import AxiomError, DomainError, IntegralityError, RingMismatchError
from .kacmoody import AlgebraId, Weight, conformal_weight, conjugate, enumerate_weights, parse_weight
from .modular import SMatrix, quantum_dimensions_weyl, s_matrix

VERLINDE_TOL = 1e-4
DIM_TOL = 1e-6
DENSE_LIMIT = 500


class FusionRing:
    """Base class.  Subclasses set ``labels``, ``dims`` and implement ``_fuse``."""

    kind = "abstract"
    labels: list
    name: str = ""

    def __init__(self):
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._by_str = {self.label_str(lab): i for i, lab in enumerate(self.labels)}
        self._memo: dict[tuple[int, int], np.ndarray] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or ''} with {len(self)} simples>"

    # labels -------------------------------------------------------------
    @staticmethod
    def label_str(label) -> str:
        if isinstance(label, tuple):
            return "(" + ")x(".join(FusionRing.label_str(x) for x in label) + ")"
        return str(label)

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < len(self.labels) and label not in self._index:
                return int(label)
        try:
            return self._index[label]
        except (KeyError, TypeError):
            pass
        i = self._by_str.get(str(label))
        if i is None:
            i = self._coerce(label)
        if i is None:
            raise DomainError(f"{label!r} is not a simple object of {self!r}")
        return i

    def _coerce(self, label):
        return None

    def __contains__(self, label):
        try:
            self.index(label)
            return True
        except DomainError:
            return False

    # structure -----------------------------------------------------------
    def fuse(self, i: int, j: int) -> np.ndarray:
        """Integer vector ``N_{ij}^k`` (memoized, read-only)."""
        key = (i, j)
        row = self._memo.get(key)
        if row is None:
            row = self._fuse(i, j)
            row.setflags(write=False)
            with self._lock:
                row = self._memo.setdefault(key, row)
        return row

    def _fuse(self, i: int, j: int) -> np.ndarray:
        raise NotImplementedError

    def coefficient(self, a, b, c) -> int:
        return int(self.fuse(self.index(a), self.index(b))[self.index(c)])

    @cached_property
    def duals(self) -> np.ndarray:
        out = np.empty(len(self), dtype=np.int64)
        for i in range(len(self)):
            hits = [j for j in range(len(self)) if self.fuse(i, j)[0]]
            if len(hits) != 1:
                raise AxiomError(f"{self.label_str(self.labels[i])} has {len(hits)} duals")
            out[i] = hits[0]
        return out

    def dual(self, label):
        return self.labels[self.dual_index(self.index(label))]

    def dual_index(self, i: int) -> int:
        return int(self.duals[i])

    def tensor(self) -> np.ndarray:
        """Dense ``N[i, j, k]``; refused above ``DENSE_LIMIT`` simples."""
        n = len(self)
        if n > DENSE_LIMIT:
            raise DomainError(f"refusing to materialize a {n}^3 fusion tensor")
        T = np.empty((n, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                T[i, j] = self.fuse(i, j)
        return T

    def fusion_matrix(self, label) -> np.ndarray:
        """``M[j, k] = N_{a j}^k``."""
        i = self.index(label)
        return np.array([self.fuse(i, j) for j in range(len(self))])

    def conformal_weight(self, label):
        """Exact conformal weight, or None when the ring carries no such data."""
        return None

    # sectors ------------------------------------------------------------
    def sector(self, *terms, **named) -> "Sector":
        """``ring.sector("1,0,0,1", ("0,1,0,2", 2))`` or ``ring.sector({label: mult})``."""
        coeffs: dict[int, int] = {}
        for t in terms:
            if isinstance(t, Mapping):
                items = t.items()
            elif isinstance(t, tuple) and len(t) == 2 and isinstance(t[1], (int, np.integer)) \
                    and not isinstance(self, ProductRing):
                items = [t]
            else:
                items = [(t, 1)]
            for lab, m in items:
                i = self.index(lab)
                coeffs[i] = coeffs.get(i, 0) + int(m)
        for lab, m in named.items():
            i = self.index(lab)
            coeffs[i] = coeffs.get(i, 0) + int(m)
        return Sector(self, coeffs)

    def simple(self, label) -> "Sector":
        return Sector(self, {self.index(label): 1})

    @property
    def one(self) -> "Sector":
        return Sector(self, {0: 1})

    @property
    def zero(self) -> "Sector":
        return Sector(self, {})

    def all_simples(self) -> list["Sector"]:
        return [Sector(self, {i: 1}) for i in range(len(self))]


class VerlindeRing(FusionRing):
    kind = "verlinde"

    def __init__(self, S: SMatrix, tol: float = VERLINDE_TOL):
        self.S = S
        self.algebra = S.algebra
        self.labels = list(S.weights)
        self.dims = S.dimensions.copy()
        self.tol = tol
        self.name = str(S.algebra)
        self._Sc = S.entries.conj()
        super().__init__()

    def _coerce(self, label):
        try:
            return self._index.get(parse_weight(self.algebra, label))
        except (ValueError, TypeError):
            return None

    def verlinde_raw(self, i: int, j: int) -> np.ndarray:
        S = self.S.entries
        return (self._Sc @ (S[i] * S[j] / S[0])).real

    def _fuse(self, i, j):
        raw = self.verlinde_raw(i, j)
        out = np.rint(raw)
        bad = np.abs(raw - out) > self.tol
        if bad.any() or (raw < -self.tol).any():
            k = int(np.argmax(np.abs(raw - out)))
            raise IntegralityError(
                f"Verlinde sum N[{self.labels[i]},{self.labels[j]}] -> {self.labels[k]} = {raw[k]!r}")
        return out.astype(np.int64)

    @cached_property
    def duals(self):
        return np.array([self._index[conjugate(w)] for w in self.labels], dtype=np.int64)

    def conformal_weight(self, label):
        return conformal_weight(self.labels[self.index(label)])


def verlinde_ring(algebra: AlgebraId) -> VerlindeRing:
    with _ring_lock:
        ring = _rings.get(algebra)
        if ring is None:
            ring = _rings[algebra] = VerlindeRing(s_matrix(algebra))
    return ring


class WeightRing(FusionRing):
    """Weights with Weyl quantum dimensions and conformal weights but no fusion rules.

    Enough for spectrum bookkeeping (index, locality) where no S-matrix is available.
    """

    kind = "weights"

    def __init__(self, algebra: AlgebraId):
        self.algebra = algebra
        self.labels = list(enumerate_weights(algebra))
        self.dims = quantum_dimensions_weyl(algebra, self.labels)
        self.name = str(algebra)
        super().__init__()

    _coerce = VerlindeRing._coerce

    def _fuse(self, i, j):
        raise DomainError(f"fusion rules of {self.algebra} are not available (no S-matrix for this series)")

    @cached_property
    def duals(self):
        return np.array([self._index[conjugate(w)] for w in self.labels], dtype=np.int64)

    def conformal_weight(self, label):
        return conformal_weight(self.labels[self.index(label)])


def weight_ring(algebra: AlgebraId) -> FusionRing:
    """Verlinde ring for type A, dimension-only :class:`WeightRing` otherwise."""
    if algebra.series == "A":
        return verlinde_ring(algebra)
    with _ring_lock:
        ring = _rings.get(algebra)
        if ring is None:
            ring = _rings[algebra] = WeightRing(algebra)
    return ring


_rings: dict[AlgebraId, FusionRing] = {}
_ring_lock = threading.Lock()


class TableRing(FusionRing):
    kind = "table"

    def __init__(self, labels: Iterable, N, dims=None, *, name: str = "", kind: str | None = None,
                 conformal_weights: Mapping | None = None, validate: bool = True,
                 commutative: bool = True):
        self.labels = list(labels)
        self.N = np.asarray(N, dtype=np.int64)
        n = len(self.labels)
        if self.N.shape != (n, n, n):
            raise AxiomError(f"fusion tensor has shape {self.N.shape}, expected {(n, n, n)}")
        self.name = name
        if kind:
            self.kind = kind
        self._h = dict(conformal_weights or {})
        super().__init__()
        self.dims = np.asarray(dims, dtype=float) if dims is not None else _perron_frobenius_dims(self.N)
        if validate:
            validate_table(self, commutative=commutative)

    def _fuse(self, i, j):
        return self.N[i, j].copy()

    def tensor(self):
        return self.N.copy()

    def conformal_weight(self, label):
        return self._h.get(self.labels[self.index(label)])

    def to_json(self) -> str:
        n = len(self)
        entries = [[self.labels[i], self.labels[j], self.labels[k], int(self.N[i, j, k])]
                   for i in range(n) for j in range(n) for k in range(n) if self.N[i, j, k]]
        return json.dumps({"labels": self.labels, "dims": [float(d) for d in self.dims], "N": entries})

    @classmethod
    def from_json(cls, text: str | dict, **kw) -> "TableRing":
        data = json.loads(text) if isinstance(text, str) else text
        labels = [str(x) for x in data["labels"]]
        idx = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        N = np.zeros((n, n, n), dtype=np.int64)
        for a, b, c, v in data["N"]:
            N[idx[str(a)], idx[str(b)], idx[str(c)]] = int(v)
        return cls(labels, N, data.get("dims"), **kw)


def _perron_frobenius_dims(N: np.ndarray) -> np.ndarray:
    M = N.sum(axis=0).astype(float)  # sum_a N_a, a positive matrix for connected rings
    vals, vecs = np.linalg.eig(M)
    v = np.abs(vecs[:, int(np.argmax(vals.real))].real)
    return v / v[0]


def validate_table(ring: TableRing, commutative: bool = True, tol: float = DIM_TOL):
    """Exhaustive axiom check; raises AxiomError naming the violated axiom and indices."""
    N = ring.N
    n = len(ring)
    lab = ring.labels
    if (N < 0).any():
        i, j, k = np.argwhere(N < 0)[0]
        raise AxiomError(f"negative coefficient N[{lab[i]},{lab[j]}]->{lab[k]}")
    eye = np.eye(n, dtype=np.int64)
    if not (np.array_equal(N[0], eye) and np.array_equal(N[:, 0], eye)):
        raise AxiomError("unit law fails for label " + str(lab[0]))
    if commutative and not np.array_equal(N, N.transpose(1, 0, 2)):
        i, j, k = np.argwhere(N != N.transpose(1, 0, 2))[0]
        raise AxiomError(f"commutativity fails: N[{lab[i]},{lab[j]}]->{lab[k]}")
    to_one = N[:, :, 0]
    if not (np.all(to_one.sum(axis=1) == 1) and np.all(to_one.sum(axis=0) == 1)
            and to_one.max() == 1):
        i = int(np.argmax(to_one.sum(axis=1) != 1))
        raise AxiomError(f"Frobenius: N[{lab[i]},mu]->1 is not delta(mu, dual)")
    dual = np.argmax(to_one, axis=1)
    if not np.array_equal(dual[dual], np.arange(n)):
        raise AxiomError("duality is not an involution")
    # N_{ab}^c = N_{a* c}^b
    for a in range(n):
        if not np.array_equal(N[a], N[dual[a]].T):
            b, c = np.argwhere(N[a] != N[dual[a]].T)[0]
            raise AxiomError(f"Frobenius reciprocity fails at ({lab[a]},{lab[b]},{lab[c]})")
    # (ab)c = a(bc):  sum_s N_ab^s N_sc^r == sum_s N_bc^s N_as^r
    left = np.einsum("abs,scr->abcr", N, N)
    right = np.einsum("bcs,asr->abcr", N, N)
    if not np.array_equal(left, right):
        a, b, c, r = np.argwhere(left != right)[0]
        raise AxiomError(f"associativity fails at ({lab[a]},{lab[b]},{lab[c]})->{lab[r]}")
    d = ring.dims
    err = np.abs(np.einsum("abc,c->ab", N, d) - np.outer(d, d))
    if err.max() > tol * max(1.0, float(d.max()) ** 2):
        a, b = np.unravel_index(int(np.argmax(err)), err.shape)
        raise AxiomError(f"dimensions are not a character at ({lab[a]},{lab[b]})")


def table_ring(labels, coefficients, dimensions=None, **kw) -> TableRing:
    """Validated explicit ring; ``coefficients`` is a dense tensor or ``{(a, b, c): n}``."""
    labels = [str(x) for x in labels]
    if isinstance(coefficients, Mapping):
        idx = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        N = np.zeros((n, n, n), dtype=np.int64)
        for (a, b, c), v in coefficients.items():
            N[idx[str(a)], idx[str(b)], idx[str(c)]] = v
        coefficients = N
    return TableRing(labels, coefficients, dimensions, **kw)


def group_ring(elements: list, mult, names=None, name="", **kw) -> TableRing:
    """Pointed ring of a finite group given by elements (identity first) and a product."""
    n = len(elements)
    idx = {e: i for i, e in enumerate(elements)}
    N = np.zeros((n, n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            N[i, j, idx[mult(a, b)]] = 1
    labels = list(names) if names else [str(e) for e in elements]
    return TableRing(labels, N, np.ones(n), name=name, kind="pointed", **kw)


def pointed_ring(group: str, m: int | None = None, names=None) -> TableRing:
    """``pointed_ring("Z", 10)``, ``pointed_ring("Z2xZ2")`` or ``pointed_ring("Z4")``."""
    g = group.replace(" ", "").upper()
    if g in ("Z2XZ2", "Z2*Z2", "KLEIN"):
        els = [(0, 0), (1, 0), (0, 1), (1, 1)]
        names = names or ["1", "sigma1", "sigma2", "sigma3"]
        return group_ring(els, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), names, "Z2xZ2")
    if g.startswith("Z"):
        if m is None:
            m = int(g[1:].strip("_()"))
        els = list(range(m))
        if names is None:
            names = ["1", "g"] + [f"g^{j}" for j in range(2, m)] if m > 1 else ["1"]
        return group_ring(els, lambda a, b: (a + b) % m, names[:m], f"Z{m}")
    raise DomainError(f"unknown pointed group {group!r}")


def su_level_one(m: int) -> TableRing:
    """SU(m)_1: cyclic of order m generated by the vector representation ``w``."""
    names = ["1", "w"] + [f"w^{j}" for j in range(2, m)]
    ring = pointed_ring("Z", m, names=names[:m])
    ring.name = f"SU({m})_1"
    return ring


def spin_level_one(two_n: int) -> TableRing:
    """Spin(2n)_1 = Z2xZ2 for even n, Z4 for odd n; sigma1 is the vector."""
    n = two_n // 2
    if n % 2 == 0:
        ring = pointed_ring("Z2xZ2")
    else:
        # Z4 generated by a spinor; its square is the vector
        ring = pointed_ring("Z", 4, names=["1", "sigma2", "sigma1", "sigma3"])
    ring.name = f"Spin({two_n})_1"
    return ring


class ProductRing(FusionRing):
    kind = "product"

    def __init__(self, left: FusionRing, right: FusionRing):
        self.left, self.right = left, right
        self.labels = [(a, b) for a in left.labels for b in right.labels]
        self.dims = np.outer(left.dims, right.dims).ravel()
        self.name = f"{left.name}x{right.name}"
        super().__init__()

    def _split(self, i):
        return divmod(i, len(self.right))

    def _coerce(self, label):
        if isinstance(label, tuple) and len(label) == 2:
            try:
                return self.left.index(label[0]) * len(self.right) + self.right.index(label[1])
            except DomainError:
                return None
        return None

    def _fuse(self, i, j):
        a1, b1 = self._split(i)
        a2, b2 = self._split(j)
        return np.outer(self.left.fuse(a1, a2), self.right.fuse(b1, b2)).ravel()

    @cached_property
    def duals(self):
        nr = len(self.right)
        return np.array([self.left.dual_index(i // nr) * nr + self.right.dual_index(i % nr)
                         for i in range(len(self))], dtype=np.int64)

    def conformal_weight(self, label):
        a, b = self._split(self.index(label))
        ha, hb = self.left.conformal_weight(a), self.right.conformal_weight(b)
        if ha is None or hb is None:
            return None
        return ha + hb


def product_ring(r1: FusionRing, r2: FusionRing) -> ProductRing:
    return ProductRing(r1, r2)


class Sector:
    """Formal non-negative combination of simple objects of one ring."""

    __slots__ = ("ring", "_c")

    def __init__(self, ring: FusionRing, coeffs: Mapping[int, int]):
        self.ring = ring
        c = {}
        for i, m in coeffs.items():
            m = int(m)
            if m < 0:
                raise DomainError("sector multiplicities must be non-negative")
            if m:
                c[int(i)] = m
        self._c = dict(sorted(c.items()))

    # views
    def items(self):
        """(label, multiplicity) pairs in the ring's canonical order."""
        return [(self.ring.labels[i], m) for i, m in self._c.items()]

    def index_items(self):
        return list(self._c.items())

    def multiplicity(self, label) -> int:
        return self._c.get(self.ring.index(label), 0)

    __getitem__ = multiplicity

    def vector(self) -> np.ndarray:
        v = np.zeros(len(self.ring), dtype=np.int64)
        for i, m in self._c.items():
            v[i] = m
        return v

    @classmethod
    def from_vector(cls, ring, v) -> "Sector":
        return cls(ring, {i: int(m) for i, m in enumerate(v) if m})

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return sum(self._c.values())

    @property
    def is_simple(self) -> bool:
        return len(self._c) == 1 and next(iter(self._c.values())) == 1

    def dimension(self) -> float:
        return float(sum(m * self.ring.dims[i] for i, m in self._c.items()))

    def conjugate(self) -> "Sector":
        return Sector(self.ring, {self.ring.dual_index(i): m for i, m in self._c.items()})

    def _check(self, other):
        if not isinstance(other, Sector):
            raise TypeError(f"expected a Sector, got {type(other).__name__}")
        if other.ring is not self.ring:
            raise RingMismatchError(f"sectors live in different rings: {self.ring!r} / {other.ring!r}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        c = dict(self._c)
        for i, m in other._c.items():
            c[i] = c.get(i, 0) + m
        return Sector(self.ring, c)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return Sector(self.ring, {i: m * int(other) for i, m in self._c.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self * other
        return NotImplemented

    def __pow__(self, p: int):
        out = self.ring.one
        for _ in range(p):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Sector) and other.ring is self.ring and other._c == self._c

    def __hash__(self):
        return hash((id(self.ring), tuple(self._c.items())))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for i, m in self._c.items():
            s = f"[{self.ring.label_str(self.ring.labels[i])}]"
            parts.append(s if m == 1 else f"{m}{s}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Sector({self})"


def multiply(a: Sector, b: Sector) -> Sector:
    a._check(b)
    ring = a.ring
    acc = np.zeros(len(ring), dtype=np.int64)
    for i, m in a._c.items():
        for j, n in b._c.items():
            acc += m * n * ring.fuse(i, j)
    return Sector.from_vector(ring, acc)


def inner_product(a: Sector, b: Sector) -> int:
    a._check(b)
    return sum(m * b._c.get(i, 0) for i, m in a._c.items())


def verlinde_coefficient(ring: FusionRing, lam, mu, nu) -> int:
    if not isinstance(ring, VerlindeRing):
        raise DomainError("verlinde_coefficient needs a Verlinde-backed ring")
    return ring.coefficient(lam, mu, nu)


def fibonacci_ring() -> TableRing:
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0] = np.eye(2, dtype=np.int64)
    N[:, 0] = np.eye(2, dtype=np.int64)
    N[1, 1] = [1, 1]
    return TableRing(["1", "tau"], N, [1.0, (1 + 5**0.5) / 2], name="Fib")


def random_triples(n: int, count: int, rng: np.random.Generator):
    return rng.integers(0, n, size=(count, 3))


def all_pairs(n: int):
    return itertools.product(range(n), repeat=2)
