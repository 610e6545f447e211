"""Small permutation groups: breadth-first closure on at most a dozen points."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CapacityError, DomainError

MAX_POINTS = 12


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``0..n-1``; ``image[i]`` is where ``i`` goes."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        if sorted(image) != list(range(len(image))):
            raise DomainError(f"{image} is not a bijection of 0..{len(image) - 1}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        image = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                image[a] = b
        return cls(tuple(image))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``(p * q)(i) = p(q(i))``: apply ``q`` first."""
        if other.degree != self.degree:
            raise DomainError("permutations act on different point sets")
        return Permutation(tuple(self.image[j] for j in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    def order(self) -> int:
        out = 1
        for c in self.cycles():
            out = out * len(c) // math.gcd(out, len(c))
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.degree):
            if i in seen:
                continue
            c, j = [], i
            while j not in seen:
                seen.add(j)
                c.append(j)
                j = self.image[j]
            out.append(tuple(c))
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.degree):
            if i in seen:
                continue
            orb = sorted({g(i) for g in self.elements})
            seen.update(orb)
            out.append(tuple(orb))
        return out

    @property
    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1


def closure(generators: Iterable[Permutation], degree: int | None = None,
            max_points: int = MAX_POINTS) -> PermutationGroup:
    """Group generated by ``generators`` via breadth-first search over products."""
    gens = list(generators)
    if degree is None:
        if not gens:
            raise DomainError("need a degree when there are no generators")
        degree = gens[0].degree
    if degree > max_points:
        raise CapacityError(f"closure is limited to {max_points} points, got {degree}")
    if any(g.degree != degree for g in gens):
        raise DomainError("generators act on different point sets")
    e = Permutation.identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = g * p
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return PermutationGroup(degree, frozenset(seen))


def pairing_to_permutation(pairing: Mapping, order: Sequence) -> Permutation:
    """Permutation of positions in ``order`` induced by a bijective pairing."""
    pos = {lab: i for i, lab in enumerate(order)}
    image = []
    for lab in order:
        if lab not in pairing:
            raise DomainError(f"pairing does not cover {lab!r}")
        tgt = pairing[lab]
        if tgt not in pos:
            raise DomainError(f"pairing sends {lab!r} outside the label set")
        image.append(pos[tgt])
    if len(set(image)) != len(image):
        raise DomainError("pairing is not a bijection on the chosen labels")
    return Permutation(tuple(image))
