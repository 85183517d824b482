"""Equivalence relations on 0..n-1 in canonical least-representative form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _union(parent: list[int], a: int, b: int) -> bool:
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return False
    # root is always the least element of its class
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb
    return True


def _canonical(parent: list[int]) -> tuple[int, ...]:
    return tuple(_find(parent, i) for i in range(len(parent)))


@dataclass(frozen=True)
class Partition:
    """rep[i] is the least element of the class of i."""

    rep: tuple[int, ...]

    def __post_init__(self):
        rep = self.rep
        for i, r in enumerate(rep):
            if r > i or rep[r] != r:
                raise ValueError(f"not in canonical form at index {i}: {rep!r}")

    @property
    def carrier_order(self) -> int:
        return len(self.rep)

    @classmethod
    def equality(cls, n: int) -> Partition:
        return cls(tuple(range(n)))

    @classmethod
    def universal(cls, n: int) -> Partition:
        return cls((0,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Partition:
        """Least equivalence relation containing ``pairs``."""
        parent = list(range(n))
        for a, b in pairs:
            _union(parent, a, b)
        return cls(_canonical(parent))

    @classmethod
    def from_labels(cls, labels: Sequence) -> Partition:
        """Elements with equal labels share a class."""
        first: dict = {}
        return cls(tuple(first.setdefault(lab, i) for i, lab in enumerate(labels)))

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Partition:
        pairs = []
        for block in classes:
            block = list(block)
            pairs.extend((block[0], x) for x in block[1:])
        return cls.from_pairs(n, pairs)

    def related(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def classes(self) -> list[list[int]]:
        """Classes in order of their least element, each ascending."""
        out: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            out.setdefault(r, []).append(i)
        return list(out.values())

    def class_of(self, a: int) -> list[int]:
        r = self.rep[a]
        return [i for i, x in enumerate(self.rep) if x == r]

    @property
    def num_classes(self) -> int:
        return sum(1 for i, r in enumerate(self.rep) if i == r)

    def is_equality(self) -> bool:
        return all(i == r for i, r in enumerate(self.rep))

    def is_universal(self) -> bool:
        return all(r == 0 for r in self.rep)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for block in self.classes():
            for a in block:
                for b in block:
                    yield a, b

    def __le__(self, other: Partition) -> bool:
        """Refinement: every class of self lies inside a class of other."""
        o = other.rep
        return all(o[i] == o[r] for i, r in enumerate(self.rep))

    def __ge__(self, other: Partition) -> bool:
        return other <= self

    def __lt__(self, other: Partition) -> bool:
        return self != other and self <= other

    def __gt__(self, other: Partition) -> bool:
        return self != other and other <= self

    def first_unrefined_pair(self, other: Partition) -> tuple[int, int] | None:
        """Least (a, b) related in self but not in other, or None if self <= other."""
        o = other.rep
        for i, r in enumerate(self.rep):
            if o[i] != o[r]:
                return (r, i)
        return None

    def meet(self, other: Partition) -> Partition:
        return Partition.from_labels(list(zip(self.rep, other.rep)))

    def join(self, other: Partition) -> Partition:
        parent = list(self.rep)
        for i, r in enumerate(other.rep):
            if i != r:
                _union(parent, i, r)
        return Partition(_canonical(parent))

    def restrict(self, members: Sequence[int]) -> Partition:
        """Partition induced on ``members`` (reindexed 0..len-1)."""
        return Partition.from_labels([self.rep[m] for m in members])

    def __str__(self) -> str:
        return " | ".join(" ".join(map(str, c)) for c in self.classes())


@dataclass(frozen=True)
class PairRelation:
    carrier_order: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = self.carrier_order
        for a, b in self.pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"pair ({a}, {b}) out of range for order {n}")

    @classmethod
    def of(cls, n: int, pairs: Iterable[tuple[int, int]]) -> PairRelation:
        return cls(n, frozenset((int(a), int(b)) for a, b in pairs))

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def restrict(self, members: Sequence[int]) -> PairRelation:
        index = {m: i for i, m in enumerate(members)}
        return PairRelation.of(
            len(members),
            ((index[a], index[b]) for a, b in self.pairs if a in index and b in index),
        )

    def is_reflexive(self) -> bool:
        return all((a, a) in self.pairs for a in range(self.carrier_order))

    def is_symmetric(self) -> bool:
        return all((b, a) in self.pairs for a, b in self.pairs)
