"""Finite inverse semigroups given by Cayley tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    ClosureNotSubsemigroup,
    IdempotentsDoNotCommute,
    InternalInconsistency,
    MalformedTable,
    NotAssociative,
    NotClosed,
    NotClosedSubset,
    NotRegular,
)
from .partition import PairRelation, Partition


class FiniteInverseSemigroup:
    """Elements are 0..n-1; ``table[a][b]`` is the product ab.

    Instances are built by :func:`validate` and never mutated afterwards.
    Equality compares the table and display names; ``name`` is a free label.
    """

    __slots__ = ("table", "cols", "names", "name", "idempotent_set", "inv", "_hash", "__dict__")

    def __init__(self, table, names, name, idempotent_set, inv):
        self.table: tuple[tuple[int, ...], ...] = table
        self.cols: tuple[tuple[int, ...], ...] = tuple(zip(*table))
        self.names: tuple[str, ...] = names
        self.name: str | None = name
        self.idempotent_set: tuple[int, ...] = idempotent_set
        self.inv: tuple[int, ...] = inv
        self._hash = hash(table)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, *xs: int) -> int:
        t = self.table
        acc = xs[0]
        for x in xs[1:]:
            acc = t[acc][x]
        return acc

    def is_idempotent(self, a: int) -> bool:
        return self.table[a][a] == a

    @cached_property
    def idempotent_mask(self) -> tuple[bool, ...]:
        return tuple(self.table[a][a] == a for a in range(self.order))

    @cached_property
    def domain_idempotent(self) -> tuple[int, ...]:
        """a -> a^-1 a"""
        t, inv = self.table, self.inv
        return tuple(t[inv[a]][a] for a in range(self.order))

    @cached_property
    def range_idempotent(self) -> tuple[int, ...]:
        """a -> a a^-1"""
        t, inv = self.table, self.inv
        return tuple(t[a][inv[a]] for a in range(self.order))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteInverseSemigroup):
            return NotImplemented
        return self._hash == other._hash and self.table == other.table and self.names == other.names

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteInverseSemigroup{label} order={self.order} |E|={len(self.idempotent_set)}>"

    def default_names(self) -> bool:
        return self.names == tuple(f"x{i}" for i in range(self.order))


def validate(
    table: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    name: str | None = None,
) -> FiniteInverseSemigroup:
    """Check that ``table`` is the Cayley table of an inverse semigroup.

    Order of checks: shape, closure, associativity, regularity, commuting idempotents.
    """
    n = len(table)
    if n == 0:
        raise MalformedTable("the empty semigroup is not supported")
    rows = []
    for a, row in enumerate(table):
        if len(row) != n:
            raise MalformedTable(f"row {a} has length {len(row)}, expected {n}")
        clean = []
        for b, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) and not hasattr(v, "__index__"):
                raise NotClosed(a, b, v)
            v = int(v)
            if not 0 <= v < n:
                raise NotClosed(a, b, v)
            clean.append(v)
        rows.append(tuple(clean))
    t = tuple(rows)

    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab_row = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if ab_row[c] != ta[tb[c]]:
                    raise NotAssociative(a, b, c)

    inv = []
    for a in range(n):
        ta = t[a]
        found = None
        for x in range(n):
            if t[ta[x]][a] == a and t[t[x][a]][x] == x:
                found = x
                break
        if found is None:
            raise NotRegular(a)
        inv.append(found)

    idem = tuple(e for e in range(n) if t[e][e] == e)
    for i, e in enumerate(idem):
        for f in idem[i + 1:]:
            if t[e][f] != t[f][e]:
                raise IdempotentsDoNotCommute(e, f)

    # with commuting idempotents inverses are unique; assert it
    for a in range(n):
        ta = t[a]
        for x in range(n):
            if x != inv[a] and t[ta[x]][a] == a and t[t[x][a]][x] == x:
                raise InternalInconsistency(f"element {a} has two inverses {inv[a]} and {x}")

    if names is None:
        names = tuple(f"x{i}" for i in range(n))
    else:
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise MalformedTable(f"expected {n} names, got {len(names)}")
        if len(set(names)) != n:
            raise MalformedTable("element names must be distinct")
    return FiniteInverseSemigroup(t, names, name, idem, tuple(inv))


def idempotents(S: FiniteInverseSemigroup) -> list[int]:
    return list(S.idempotent_set)


def _check_index(S: FiniteInverseSemigroup, *xs: int) -> None:
    for x in xs:
        if not 0 <= x < S.order:
            raise IndexError(f"element {x} out of range for order {S.order}")


def natural_order(S: FiniteInverseSemigroup, a: int, b: int) -> bool:
    """a <= b iff a = (a a^-1) b."""
    _check_index(S, a, b)
    return S.table[S.range_idempotent[a]][b] == a


def natural_order_right(S: FiniteInverseSemigroup, a: int, b: int) -> bool:
    """The other one-sided form: a = b (a^-1 a)."""
    _check_index(S, a, b)
    return S.table[b][S.domain_idempotent[a]] == a


def greens(S: FiniteInverseSemigroup, which: str) -> Partition:
    which = which.upper()
    if which == "L":
        return Partition.from_labels(S.domain_idempotent)
    if which == "R":
        return Partition.from_labels(S.range_idempotent)
    if which == "H":
        return Partition.from_labels(list(zip(S.domain_idempotent, S.range_idempotent)))
    raise ValueError(f"unknown Green's relation {which!r}; expected L, R or H")


def f_relation(S: FiniteInverseSemigroup) -> PairRelation:
    """All (a, b) with a^-1 b idempotent."""
    t, inv, mask = S.table, S.inv, S.idempotent_mask
    n = S.order
    return PairRelation.of(n, ((a, b) for a in range(n) for b in range(n) if mask[t[inv[a]][b]]))


@dataclass(frozen=True, eq=False)
class SubStructure:
    parent: FiniteInverseSemigroup
    members: tuple[int, ...]
    semigroup: FiniteInverseSemigroup = field(repr=False)

    @cached_property
    def reindex(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.members)}

    def to_parent(self, i: int) -> int:
        return self.members[i]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.reindex


def substructure(S: FiniteInverseSemigroup, members: Iterable[int]) -> SubStructure:
    """Inverse subsemigroup on ``members``, reindexed in ascending order."""
    ms = tuple(sorted(set(members)))
    if not ms:
        raise NotClosedSubset(-1, None, "member set is empty")
    _check_index(S, *ms)
    index = {m: i for i, m in enumerate(ms)}
    t = S.table
    rows = []
    for a in ms:
        if S.inv[a] not in index:
            raise NotClosedSubset(a, None, f"inverse of {a} is not a member")
        row = []
        for b in ms:
            p = t[a][b]
            if p not in index:
                raise NotClosedSubset(a, b, f"product of {a} and {b} is not a member")
            row.append(index[p])
        rows.append(row)
    sub = validate(rows, names=[S.names[m] for m in ms])
    return SubStructure(S, ms, sub)


def e_closure(S: FiniteInverseSemigroup) -> SubStructure:
    """E-omega: every element lying above some idempotent."""
    t = S.table
    members = [x for x in range(S.order) if any(t[e][x] == e for e in S.idempotent_set)]
    try:
        return substructure(S, members)
    except NotClosedSubset as exc:
        raise ClosureNotSubsemigroup(f"closure of idempotents is not closed: {exc}") from exc


def centralizer_of_idempotents(S: FiniteInverseSemigroup) -> SubStructure:
    """E-zeta: every element commuting with all idempotents."""
    t = S.table
    members = [a for a in range(S.order) if all(t[a][e] == t[e][a] for e in S.idempotent_set)]
    try:
        sub = substructure(S, members)
    except NotClosedSubset as exc:
        raise ClosureNotSubsemigroup(f"centralizer of idempotents is not closed: {exc}") from exc
    T = sub.semigroup
    for e in T.idempotent_set:
        for a in range(T.order):
            if T.table[a][e] != T.table[e][a]:
                raise ClosureNotSubsemigroup("centralizer of idempotents is not Clifford")
    return sub


def _signature(S: FiniteInverseSemigroup, a: int) -> tuple:
    t = S.table
    powers = []
    x = a
    while x not in powers:
        powers.append(x)
        x = t[x][a]
    return (
        t[a][a] == a,
        len(powers),
        S.inv[a] == a,
        sum(1 for x in range(S.order) if t[x][a] == x),
        sum(1 for x in range(S.order) if t[a][x] == x),
    )


def find_isomorphism(S: FiniteInverseSemigroup, T: FiniteInverseSemigroup) -> list[int] | None:
    """Backtracking search for a bijection phi with phi(ab) = phi(a)phi(b)."""
    n = S.order
    if n != T.order or len(S.idempotent_set) != len(T.idempotent_set):
        return None
    sig_s = [_signature(S, a) for a in range(n)]
    sig_t = [_signature(T, b) for b in range(n)]
    if sorted(sig_s) != sorted(sig_t):
        return None
    cands = [[b for b in range(n) if sig_t[b] == sig_s[a]] for a in range(n)]
    order = sorted(range(n), key=lambda a: len(cands[a]))
    phi = [-1] * n
    used = [False] * n
    st, tt = S.table, T.table
    preimages: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u in range(n):
        for v in range(n):
            preimages[st[u][v]].append((u, v))

    def consistent(a: int) -> bool:
        pa = phi[a]
        for u, v in preimages[a]:
            if phi[u] >= 0 and phi[v] >= 0 and tt[phi[u]][phi[v]] != pa:
                return False
        for x in range(n):
            px = phi[x]
            if px < 0:
                continue
            for u, v, pu, pv in ((a, x, pa, px), (x, a, px, pa)):
                w = phi[st[u][v]]
                if w >= 0 and w != tt[pu][pv]:
                    return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        for b in cands[a]:
            if used[b]:
                continue
            phi[a], used[b] = b, True
            if consistent(a) and search(k + 1):
                return True
            phi[a], used[b] = -1, False
        return False

    return list(phi) if search(0) else None


def is_isomorphic(S: FiniteInverseSemigroup, T: FiniteInverseSemigroup) -> bool:
    return find_isomorphism(S, T) is not None
