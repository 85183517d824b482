"""Congruences on finite inverse semigroups: closure, kernel and trace,
the least-congruence operators for a given trace or kernel, extremal
congruences and lattice enumeration."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from .errors import (
    EnumerationCapExceeded,
    InternalInconsistency,
    InvalidWord,
    NotAbove,
    ParentMismatch,
)
from .partition import PairRelation, Partition, _canonical, _union
from .semigroup import FiniteInverseSemigroup, SubStructure, validate

log = logging.getLogger(__name__)

DEFAULT_CAP = 10000


def default_cap() -> int:
    value = os.environ.get("ISG_ENUM_CAP")
    return int(value) if value else DEFAULT_CAP


@dataclass(frozen=True, eq=False)
class Congruence:
    parent: FiniteInverseSemigroup
    base: Partition

    def __post_init__(self):
        if len(self.base.rep) != self.parent.order:
            raise ValueError(f"partition of {len(self.base.rep)} points on a semigroup of order {self.parent.order}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.base.rep == other.base.rep and self.parent == other.parent

    def __hash__(self) -> int:
        return hash((self.parent._hash, self.base.rep))

    def __repr__(self) -> str:
        return f"Congruence({self.num_classes} classes, rep={list(self.rep)})"

    @property
    def rep(self) -> tuple[int, ...]:
        return self.base.rep

    @property
    def num_classes(self) -> int:
        return self.base.num_classes

    def related(self, a: int, b: int) -> bool:
        return self.base.rep[a] == self.base.rep[b]

    def classes(self) -> list[list[int]]:
        return self.base.classes()

    def class_of(self, a: int) -> list[int]:
        return self.base.class_of(a)

    def idempotent_classes(self) -> list[list[int]]:
        """Classes containing an idempotent, ordered by least element."""
        reps = {self.rep[e] for e in self.parent.idempotent_set}
        return [c for c in self.classes() if c[0] in reps]

    @cached_property
    def kernel(self) -> tuple[int, ...]:
        rep = self.rep
        reps = {rep[e] for e in self.parent.idempotent_set}
        return tuple(a for a in range(len(rep)) if rep[a] in reps)

    @cached_property
    def kernel_set(self) -> frozenset[int]:
        return frozenset(self.kernel)

    @cached_property
    def trace(self) -> Partition:
        """Restriction to idempotents; non-idempotents are singletons."""
        mask = self.parent.idempotent_mask
        return Partition.from_labels([("e", r) if mask[i] else ("x", i) for i, r in enumerate(self.rep)])

    def is_equality(self) -> bool:
        return self.base.is_equality()

    def is_universal(self) -> bool:
        return self.base.is_universal()

    def _same_parent(self, other: Congruence) -> None:
        if self.parent is not other.parent and self.parent != other.parent:
            raise ParentMismatch("congruences live on different semigroups")

    def __le__(self, other: Congruence) -> bool:
        self._same_parent(other)
        return self.base <= other.base

    def __ge__(self, other: Congruence) -> bool:
        return other <= self

    def __lt__(self, other: Congruence) -> bool:
        return self != other and self <= other

    def __gt__(self, other: Congruence) -> bool:
        return other < self


# -- closure -------------------------------------------------------------------


def _close(S: FiniteInverseSemigroup, pairs: Iterable[tuple[int, int]], start: tuple[int, ...] | None = None):
    """Least congruence containing ``pairs`` and the congruence ``start``."""
    parent = list(start) if start is not None else list(range(S.order))
    rows, cols = S.table, S.cols
    work = list(pairs)
    while work:
        a, b = work.pop()
        if _union(parent, a, b):
            work.extend(zip(rows[a], rows[b]))
            work.extend(zip(cols[a], cols[b]))
    return _canonical(parent)


def closure(S: FiniteInverseSemigroup, R: PairRelation | Iterable[tuple[int, int]]) -> Congruence:
    pairs = R.pairs if isinstance(R, PairRelation) else R
    return Congruence(S, Partition(_close(S, pairs)))


def equality(S: FiniteInverseSemigroup) -> Congruence:
    return Congruence(S, Partition.equality(S.order))


def universal(S: FiniteInverseSemigroup) -> Congruence:
    return Congruence(S, Partition.universal(S.order))


def compatibility_witness(S: FiniteInverseSemigroup, P: Partition) -> tuple[int, int, int] | None:
    """Least (a, b, c) with a P b but ca, cb or ac, bc unrelated; None if compatible."""
    rep = P.rep
    rows, cols = S.table, S.cols
    for a, r in enumerate(rep):
        if a == r:
            continue
        for c in range(S.order):
            if rep[cols[a][c]] != rep[cols[r][c]] or rep[rows[a][c]] != rep[rows[r][c]]:
                return (r, a, c)
    return None


def is_congruence(S: FiniteInverseSemigroup, P: Partition) -> bool:
    if P.carrier_order != S.order:
        return False
    return compatibility_witness(S, P) is None


def congruence(S: FiniteInverseSemigroup, P: Partition | Iterable[int]) -> Congruence:
    """Wrap a partition known to be a congruence; raises ValueError otherwise."""
    if not isinstance(P, Partition):
        P = Partition.from_labels(list(P))
    w = compatibility_witness(S, P) if P.carrier_order == S.order else (-1, -1, -1)
    if w is not None:
        raise ValueError(f"partition is not a congruence (witness {w})")
    return Congruence(S, P)


def kernel(rho: Congruence) -> list[int]:
    return list(rho.kernel)


def trace(rho: Congruence) -> Partition:
    return rho.trace


def kernel_trace_test(rho: Congruence, a: int, b: int) -> bool:
    """a^-1a tr(rho) b^-1b and ab^-1 in ker(rho)."""
    S = rho.parent
    d = S.domain_idempotent
    return rho.related(d[a], d[b]) and S.table[a][S.inv[b]] in rho.kernel_set


# -- least congruence with given trace / kernel ----------------------------------


def _generators(P: Partition) -> list[tuple[int, int]]:
    return [(r, i) for i, r in enumerate(P.rep) if i != r]


@lru_cache(maxsize=65536)
def rho_t_routes(rho: Congruence) -> dict[str, Congruence]:
    """Independent computations of the least congruence sharing rho's trace."""
    S = rho.parent
    rep = rho.rep
    t, inv, mask = S.table, S.inv, S.idempotent_mask
    E = S.idempotent_set
    n = S.order
    by_trace = closure(S, [(e, f) for e in E for f in E if e < f and rep[e] == rep[f]])
    by_f = closure(
        S,
        [(a, b) for a in range(n) for b in range(a + 1, n) if rep[a] == rep[b] and mask[t[inv[a]][b]]],
    )
    return {"trace_closure": by_trace, "rho_meet_F": by_f}


def rho_t_pointwise(rho: Congruence, a: int, b: int) -> bool:
    """Exists idempotent e with ae = be and e rho a^-1a rho b^-1b."""
    S = rho.parent
    rep = rho.rep
    d = S.domain_idempotent
    r = rep[d[a]]
    if r != rep[d[b]]:
        return False
    ta, tb = S.table[a], S.table[b]
    return any(rep[e] == r and ta[e] == tb[e] for e in S.idempotent_set)


@lru_cache(maxsize=65536)
def rho_t(rho: Congruence) -> Congruence:
    routes = rho_t_routes(rho)
    result = routes["trace_closure"]
    if routes["rho_meet_F"] != result:
        raise InternalInconsistency(f"trace closure and (rho meet F)* disagree for {rho!r}")
    n = rho.parent.order
    for a in range(n):
        for b in range(n):
            if result.related(a, b) != rho_t_pointwise(rho, a, b):
                raise InternalInconsistency(f"pointwise test for rho_t disagrees at ({a}, {b})")
    return result


@lru_cache(maxsize=65536)
def rho_k_routes(rho: Congruence) -> dict[str, Congruence]:
    """Independent computations of the least congruence sharing rho's kernel."""
    S = rho.parent
    t = S.table
    by_squares = closure(S, [(x, t[x][x]) for x in rho.kernel if t[x][x] != x])
    by_l = closure(S, _generators(Partition.from_labels(list(zip(rho.rep, S.domain_idempotent)))))
    by_r = closure(S, _generators(Partition.from_labels(list(zip(rho.rep, S.range_idempotent)))))
    return {"square_closure": by_squares, "rho_meet_L": by_l, "rho_meet_R": by_r}


@lru_cache(maxsize=65536)
def rho_k(rho: Congruence) -> Congruence:
    routes = rho_k_routes(rho)
    result = routes["square_closure"]
    for key in ("rho_meet_L", "rho_meet_R"):
        if routes[key] != result:
            raise InternalInconsistency(f"kernel closure and {key} disagree for {rho!r}")
    return result


def min_chain(rho: Congruence, word: str) -> Congruence:
    """Apply the t/k operators left to right: "kt" means (rho_k)_t."""
    if not word or set(word) - {"t", "k"}:
        raise InvalidWord(f"word must be a nonempty string over 't' and 'k', got {word!r}")
    for ch in word:
        rho = rho_t(rho) if ch == "t" else rho_k(rho)
    return rho


# -- lattice operations ----------------------------------------------------------


def join(rho: Congruence, theta: Congruence) -> Congruence:
    rho._same_parent(theta)
    # the equivalence join of two congruences is already compatible
    return Congruence(rho.parent, rho.base.join(theta.base))


def meet(rho: Congruence, theta: Congruence) -> Congruence:
    rho._same_parent(theta)
    return Congruence(rho.parent, rho.base.meet(theta.base))


# -- enumeration -----------------------------------------------------------------


@lru_cache(maxsize=1024)
def principal_congruences(S: FiniteInverseSemigroup) -> dict[tuple[int, int], Congruence]:
    n = S.order
    return {(a, b): closure(S, [(a, b)]) for a in range(n) for b in range(a + 1, n)}


@lru_cache(maxsize=1024)
def _enumerate(S: FiniteInverseSemigroup, cap: int) -> tuple[tuple[Congruence, ...], bool]:
    principals = sorted({p.rep for p in principal_congruences(S).values()})
    bottom = tuple(range(S.order))
    seen = {bottom}
    frontier = [bottom]
    complete = True
    while frontier and complete:
        nxt = []
        for rep in frontier:
            base = Partition(rep)
            for p in principals:
                j = base.join(Partition(p)).rep
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
                    if len(seen) > cap:
                        complete = False
                        break
            if not complete:
                break
        frontier = nxt
    out = sorted(seen, key=lambda r: (sum(1 for i, x in enumerate(r) if i == x), r))
    return tuple(Congruence(S, Partition(r)) for r in out), complete


def enumerate_congruences(S: FiniteInverseSemigroup, cap: int | None = None) -> list[Congruence]:
    """Full congruence lattice as the join-closure of principal congruences.

    Sorted by (number of classes, rep array); the universal congruence comes first.
    """
    cap = default_cap() if cap is None else cap
    result, complete = _enumerate(S, cap)
    if not complete:
        raise EnumerationCapExceeded(cap, list(result))
    return list(result)


def try_enumerate(S: FiniteInverseSemigroup, cap: int | None = None) -> list[Congruence] | None:
    try:
        return enumerate_congruences(S, cap)
    except EnumerationCapExceeded:
        log.info("enumeration of %r exceeded the cap; oracle checks skipped", S)
        return None


# -- extremal congruences ----------------------------------------------------------


@lru_cache(maxsize=4096)
def sigma(S: FiniteInverseSemigroup, cap: int | None = None) -> Congruence:
    """Least group congruence: x ~ y iff xe = ye for some idempotent e."""
    t = S.table
    n = S.order
    E = S.idempotent_set
    rel = [[any(t[x][e] == t[y][e] for e in E) for y in range(n)] for x in range(n)]
    P = Partition.from_pairs(n, ((x, y) for x in range(n) for y in range(x + 1, n) if rel[x][y]))
    for x in range(n):
        for y in range(n):
            if rel[x][y] != P.related(x, y):
                raise InternalInconsistency(f"sigma relation is not transitive at ({x}, {y})")
    if not is_congruence(S, P):
        raise InternalInconsistency("sigma is not a congruence")
    result = Congruence(S, P)
    if len({P.rep[e] for e in E}) != 1:
        raise InternalInconsistency("quotient by sigma is not a group")
    lattice = try_enumerate(S, cap)
    if lattice is None:
        log.info("sigma minimality check skipped for %r", S)
    else:
        for c in lattice:
            if len({c.rep[e] for e in E}) == 1 and not result <= c:
                raise InternalInconsistency("sigma is not contained in a group congruence")
    return result


def mu_fast(S: FiniteInverseSemigroup) -> Congruence:
    """a ~ b iff a^-1 e a = b^-1 e b for every idempotent e."""
    t, inv = S.table, S.inv
    labels = [tuple(t[t[inv[a]][e]][a] for e in S.idempotent_set) for a in range(S.order)]
    return Congruence(S, Partition.from_labels(labels))


def _greatest(candidates: list[Congruence], what: str) -> Congruence:
    top = min(candidates, key=lambda c: (c.num_classes, c.rep))
    for c in candidates:
        if not c <= top:
            raise InternalInconsistency(f"no greatest {what} congruence among candidates")
    return top


def _is_idempotent_separating(c: Congruence) -> bool:
    reps = [c.rep[e] for e in c.parent.idempotent_set]
    return len(set(reps)) == len(reps)


@lru_cache(maxsize=4096)
def mu(S: FiniteInverseSemigroup, cap: int | None = None) -> Congruence:
    """Greatest idempotent-separating congruence, oracle-checked against enumeration."""
    fast = mu_fast(S)
    if not is_congruence(S, fast.base) or not _is_idempotent_separating(fast):
        raise InternalInconsistency("fast mu is not an idempotent-separating congruence")
    lattice = try_enumerate(S, cap)
    if lattice is None:
        log.info("mu oracle check skipped for %r", S)
        return fast
    oracle = _greatest([c for c in lattice if _is_idempotent_separating(c)], "idempotent separating")
    if oracle != fast:
        raise InternalInconsistency("fast mu disagrees with enumeration")
    return fast


@lru_cache(maxsize=4096)
def tau(S: FiniteInverseSemigroup, cap: int | None = None) -> Congruence:
    """Greatest idempotent-pure congruence (kernel equal to E), by enumeration."""
    lattice = enumerate_congruences(S, cap)
    t = S.table
    pure = [c for c in lattice if all(t[x][x] == x for x in range(S.order) if c.related(x, t[x][x]))]
    top = _greatest(pure, "idempotent pure")
    if set(top.kernel) != set(S.idempotent_set):
        raise InternalInconsistency("tau kernel differs from the idempotents")
    return top


# -- quotients and transfers -------------------------------------------------------


@lru_cache(maxsize=65536)
@lru_cache(maxsize=4096)
def quotient(S: FiniteInverseSemigroup, rho: Congruence) -> tuple[FiniteInverseSemigroup, tuple[int, ...]]:
    """S/rho with classes indexed by rank of least representative, plus the projection."""
    if rho.parent != S:
        raise ParentMismatch("congruence is not on this semigroup")
    rep = rho.rep
    reps = [i for i, r in enumerate(rep) if i == r]
    index = {r: k for k, r in enumerate(reps)}
    t = S.table
    table = [[index[rep[t[a][b]]] for b in reps] for a in reps]
    names = [f"[{S.names[r]}]" for r in reps]
    Q = validate(table, names=names)
    return Q, tuple(index[rep[a]] for a in range(S.order))


def push_congruence(theta: Congruence, rho: Congruence) -> Congruence:
    """theta/rho on S/rho; requires rho contained in theta."""
    theta._same_parent(rho)
    bad = rho.base.first_unrefined_pair(theta.base)
    if bad is not None:
        raise NotAbove(*bad)
    Q, _ = quotient(rho.parent, rho)
    reps = [i for i, r in enumerate(rho.rep) if i == r]
    P = Partition.from_labels([theta.rep[r] for r in reps])
    if not is_congruence(Q, P):
        raise InternalInconsistency("pushed relation is not a congruence on the quotient")
    return Congruence(Q, P)


def pull_congruence(kappa: Congruence, rho: Congruence) -> Congruence:
    """Preimage on S of a congruence on S/rho."""
    Q, proj = quotient(rho.parent, rho)
    if kappa.parent != Q:
        raise ParentMismatch("congruence is not on the quotient by rho")
    return Congruence(rho.parent, Partition.from_labels([kappa.rep[p] for p in proj]))


def restrict_congruence(rho: Congruence, Y: SubStructure) -> Congruence:
    if Y.parent != rho.parent:
        raise ParentMismatch("substructure is not inside the congruence's semigroup")
    P = rho.base.restrict(Y.members)
    if not is_congruence(Y.semigroup, P):
        raise InternalInconsistency("restriction is not a congruence on the substructure")
    return Congruence(Y.semigroup, P)
