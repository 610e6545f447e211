"""Root data and level-k dominant weights for the affine algebras of type A and D.

Weights are stored as Dynkin labels ``(l_1, ..., l_r)``; the affine label
``l_0`` is implicit.  Type A is ``su(rank + 1)``, type D is ``so(2 * rank)``
with Bourbaki node numbering (spinor nodes are ``rank - 1`` and ``rank``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, DomainError

DEFAULT_WEIGHT_CAP = 10**6


@dataclass(frozen=True, order=True)
class AlgebraId:
    series: str
    rank: int
    level: int

    def __post_init__(self):
        if self.series not in ("A", "D"):
            raise DomainError(f"unsupported series {self.series!r}")
        if self.series == "A" and self.rank < 1:
            raise DomainError("type A needs rank >= 1")
        if self.series == "D" and self.rank < 3:
            raise DomainError("type D needs rank >= 3")
        if self.level < 1:
            raise DomainError("level must be a positive integer")

    @property
    def n(self) -> int:
        """``n`` for ``su(n)``; only meaningful for type A."""
        return self.rank + 1

    def __str__(self):
        if self.series == "A":
            return f"SU({self.rank + 1})_{self.level}"
        return f"Spin({2 * self.rank})_{self.level}"


def su(n: int, k: int) -> AlgebraId:
    return AlgebraId("A", n - 1, k)


def spin(two_n: int, k: int) -> AlgebraId:
    if two_n % 2:
        raise DomainError("only even orthogonal algebras (type D) are supported")
    return AlgebraId("D", two_n // 2, k)


@dataclass(frozen=True, order=True)
class Weight:
    algebra: AlgebraId
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.algebra.rank:
            raise DomainError(f"{self.algebra} weights need {self.algebra.rank} labels, got {labels}")
        if min(labels) < 0:
            raise DomainError(f"negative Dynkin label in {labels}")
        if level_of(self.algebra, labels) > self.algebra.level:
            raise DomainError(f"{labels} exceeds level {self.algebra.level} of {self.algebra}")

    def __str__(self):
        return ",".join(str(x) for x in self.labels)

    def __repr__(self):
        return f"Weight({self.algebra}, ({self}))"

    @property
    def is_vacuum(self) -> bool:
        return not any(self.labels)


def comarks(algebra: AlgebraId) -> tuple[int, ...]:
    r = algebra.rank
    if algebra.series == "A":
        return (1,) * r
    return (1,) + (2,) * (r - 3) + (1, 1)


def level_of(algebra: AlgebraId, labels: Sequence[int]) -> int:
    return sum(a * x for a, x in zip(comarks(algebra), labels))


def parse_weight(algebra: AlgebraId, text) -> Weight:
    """Accept ``"1,0,0,1"``, ``"1001"`` (single-digit labels) or a sequence."""
    if isinstance(text, Weight):
        return text
    if isinstance(text, str):
        text = text.strip().strip("()[]")
        if "," in text:
            labels = [int(x) for x in text.split(",")]
        elif len(text) == algebra.rank and text.isdigit():
            labels = [int(c) for c in text]
        else:
            labels = [int(text)] if text else []
    else:
        labels = list(text)
    return Weight(algebra, tuple(labels))


class RootSystem:
    """Positive roots (simple-root coordinates) and inner products of a simply-laced algebra."""

    def __init__(self, series: str, rank: int):
        self.series = series
        self.rank = rank
        self.cartan = _cartan_matrix(series, rank)
        self.inverse_cartan = _inverse_cartan(series, rank)
        self.positive_roots = _positive_roots(self.cartan)

    @property
    def dual_coxeter(self) -> int:
        return self.rank + 1 if self.series == "A" else 2 * self.rank - 2

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @cached_property
    def root_matrix(self) -> np.ndarray:
        return np.array(self.positive_roots, dtype=np.int64)

    def inner(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        """Weight inner product with roots of length squared 2."""
        F = self.inverse_cartan
        r = self.rank
        return sum((F[i][j] * lam[i] * mu[j] for i in range(r) for j in range(r)), Fraction(0))


@lru_cache(maxsize=None)
def root_system(series: str, rank: int) -> RootSystem:
    return RootSystem(series, rank)


def _cartan_matrix(series: str, rank: int) -> np.ndarray:
    C = 2 * np.eye(rank, dtype=np.int64)
    for i in range(rank - 1):
        C[i, i + 1] = C[i + 1, i] = -1
    if series == "D":
        # node rank-1 (0-based rank-1) hangs off node rank-3 instead of rank-2
        a, b, c = rank - 3, rank - 2, rank - 1
        C[b, c] = C[c, b] = 0
        C[a, c] = C[c, a] = -1
    return C


def _inverse_cartan(series: str, rank: int) -> list[list[Fraction]]:
    r = rank
    F = [[Fraction(0)] * r for _ in range(r)]
    if series == "A":
        n = r + 1
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                F[i - 1][j - 1] = Fraction(min(i, j) * (n - max(i, j)), n)
        return F
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i <= r - 2 and j <= r - 2:
                v = Fraction(min(i, j))
            elif i <= r - 2:
                v = Fraction(i, 2)
            elif j <= r - 2:
                v = Fraction(j, 2)
            elif i == j:
                v = Fraction(r, 4)
            else:
                v = Fraction(r - 2, 4)
            F[i - 1][j - 1] = v
    return F


def _positive_roots(cartan: np.ndarray) -> list[tuple[int, ...]]:
    # simply laced: beta + alpha_i is a root iff (beta, alpha_i) = -1
    r = cartan.shape[0]
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = list(simple)
    seen = set(roots)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            b = np.array(beta)
            for i in range(r):
                if int(b @ cartan[:, i]) == -1:
                    gamma = tuple(int(x) for x in b + np.eye(r, dtype=int)[i])
                    if gamma not in seen:
                        seen.add(gamma)
                        roots.append(gamma)
                        nxt.append(gamma)
        frontier = nxt
    return sorted(roots, key=lambda t: (sum(t), t))


def _iter_labels(coeffs: tuple[int, ...], budget: int) -> Iterator[tuple[int, ...]]:
    if not coeffs:
        yield ()
        return
    a, rest = coeffs[0], coeffs[1:]
    for x in range(budget // a + 1):
        for tail in _iter_labels(rest, budget - a * x):
            yield (x,) + tail


def enumerate_weights(algebra: AlgebraId, cap: int = DEFAULT_WEIGHT_CAP) -> list[Weight]:
    """All dominant level-k weights, lexicographic in the Dynkin labels (vacuum first)."""
    return list(_weights_cached(algebra, cap))


@lru_cache(maxsize=64)
def _weights_cached(algebra: AlgebraId, cap: int) -> tuple[Weight, ...]:
    out = []
    for labels in _iter_labels(comarks(algebra), algebra.level):
        if len(out) >= cap:
            raise CapacityError(f"{algebra} has more than {cap} level-{algebra.level} weights")
        out.append(Weight(algebra, labels))
    return tuple(out)


def _require_a(w: Weight, what: str):
    if w.algebra.series != "A":
        raise DomainError(f"{what} is only defined for type A, got {w.algebra}")


def color(w: Weight) -> int:
    """Z_n grading: sum of i * l_i mod n."""
    _require_a(w, "color")
    n = w.algebra.n
    return sum(i * x for i, x in enumerate(w.labels, start=1)) % n


def affine_labels(w: Weight) -> tuple[int, ...]:
    return (w.algebra.level - level_of(w.algebra, w.labels),) + w.labels


def simple_current(w: Weight, power: int = 1) -> Weight:
    """Generator of the Z_n outer automorphism: rotates the affine Dynkin diagram."""
    _require_a(w, "simple_current")
    n = w.algebra.n
    full = affine_labels(w)
    s = power % n
    rotated = full[-s:] + full[:-s] if s else full
    return Weight(w.algebra, rotated[1:])


def orbit(w: Weight, order: int | None = None) -> list[Weight]:
    """Distinct images of ``w`` under the subgroup of order ``order`` of the simple currents."""
    _require_a(w, "orbit")
    n = w.algebra.n
    order = n if order is None else order
    if n % order:
        raise DomainError(f"Z_{n} has no subgroup of order {order}")
    step = n // order
    out = []
    for j in range(order):
        x = simple_current(w, j * step)
        if x not in out:
            out.append(x)
    return out


def conjugate(w: Weight) -> Weight:
    a = w.algebra
    if a.series == "A":
        return Weight(a, w.labels[::-1])
    if a.rank % 2:
        # odd rank: the two spinor nodes are exchanged
        return Weight(a, w.labels[:-2] + (w.labels[-1], w.labels[-2]))
    return w


def conformal_weight(w: Weight) -> Fraction:
    """h = (l, l + 2 rho) / (2 (k + h_dual)), exact."""
    a = w.algebra
    R = root_system(a.series, a.rank)
    lam = w.labels
    shifted = [x + 2 for x in lam]
    return R.inner(lam, shifted) / (2 * (a.level + R.dual_coxeter))


def central_charge(algebra: AlgebraId) -> Fraction:
    R = root_system(algebra.series, algebra.rank)
    return Fraction(algebra.level * R.dimension, algebra.level + R.dual_coxeter)


def dual_coxeter(algebra: AlgebraId) -> int:
    return root_system(algebra.series, algebra.rank).dual_coxeter
