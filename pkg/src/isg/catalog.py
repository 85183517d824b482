"""Built-in semigroups and the .cay / JSON table formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .errors import (
    LinkingMapNotHomomorphism,
    LinkingMapsDoNotCompose,
    ParseError,
    SizeExceeded,
    SizeUnsupported,
)
from .semigroup import FiniteInverseSemigroup, validate

MAX_ORDER = 64


def _renamed(S: FiniteInverseSemigroup, name: str) -> FiniteInverseSemigroup:
    return validate(S.table, names=S.names, name=name)


def symmetric_inverse_monoid(n: int) -> FiniteInverseSemigroup:
    """All partial injections of {1..n}, composed left to right (apply a, then b).

    Elements are sorted by (rank, graph); index 0 is the empty map.
    """
    if not 1 <= n <= 3:
        raise SizeUnsupported(f"symmetric inverse monoid I_{n} is supported for 1 <= n <= 3")
    points = range(1, n + 1)
    maps = []
    for k in range(n + 1):
        for dom in combinations(points, k):
            for img in permutations(points, k):
                maps.append(tuple(zip(dom, img)))
    maps.sort(key=lambda g: (len(g), g))
    index = {g: i for i, g in enumerate(maps)}

    def compose(f, g):
        gd = dict(g)
        return tuple((x, gd[y]) for x, y in f if y in gd)

    table = [[index[compose(f, g)] for g in maps] for f in maps]

    def label(g) -> str:
        d = dict(g)
        return "[" + "".join(str(d.get(x, "-")) for x in points) + "]"

    return validate(table, names=[label(g) for g in maps], name=f"i{n}")


def brandt_b2() -> FiniteInverseSemigroup:
    """{0, e, f, a, a'} realized as the 2x2 matrix units plus zero."""
    units = [None, (1, 1), (2, 2), (1, 2), (2, 1)]

    def mul(x, y):
        if x is None or y is None or x[1] != y[0]:
            return None
        return (x[0], y[1])

    table = [[units.index(mul(x, y)) for y in units] for x in units]
    return validate(table, names=["0", "e", "f", "a", "a'"], name="b2")


def chain_semilattice(n: int) -> FiniteInverseSemigroup:
    if n < 1:
        raise SizeUnsupported("chain length must be positive")
    return validate([[min(i, j) for j in range(n)] for i in range(n)],
                    names=[f"c{i}" for i in range(n)], name=f"c{n}")


def cyclic_group(n: int) -> FiniteInverseSemigroup:
    if n < 1:
        raise SizeUnsupported("group order must be positive")
    return validate([[(i + j) % n for j in range(n)] for i in range(n)],
                    names=[f"g{i}" for i in range(n)], name=f"z{n}")


def symmetric_group_s3() -> FiniteInverseSemigroup:
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # apply p, then q
    table = [[index[tuple(q[p[x]] for x in range(3))] for q in perms] for p in perms]
    return validate(table, names=["".join(map(str, p)) for p in perms], name="s3")


def strong_semilattice_of_groups(
    semilattice: Sequence[Sequence[int]],
    groups: Sequence[FiniteInverseSemigroup],
    maps: Mapping[tuple[int, int], Sequence[int]],
) -> FiniteInverseSemigroup:
    """Clifford semigroup from groups G_i over a semilattice Y with linking
    homomorphisms ``maps[(i, j)]: G_i -> G_j`` for j <= i.

    Missing (i, i) maps default to the identity. Elements are ordered by
    semilattice index, then group element.
    """
    Y = validate(semilattice)
    if len(Y.idempotent_set) != Y.order:
        raise ValueError("semilattice table has non-idempotent elements")
    k = Y.order
    if len(groups) != k:
        raise ValueError(f"expected {k} groups, got {len(groups)}")
    for G in groups:
        if len(G.idempotent_set) != 1:
            raise ValueError("every component must be a group")

    def below(j, i):
        return Y.table[i][j] == j

    phi: dict[tuple[int, int], tuple[int, ...]] = {}
    for i in range(k):
        for j in range(k):
            if not below(j, i):
                continue
            if (i, j) in maps:
                m = tuple(int(x) for x in maps[(i, j)])
            elif i == j:
                m = tuple(range(groups[i].order))
            else:
                raise LinkingMapNotHomomorphism(f"missing linking map ({i}, {j})")
            Gi, Gj = groups[i], groups[j]
            if len(m) != Gi.order or any(not 0 <= x < Gj.order for x in m):
                raise LinkingMapNotHomomorphism(f"map ({i}, {j}) has the wrong shape")
            for a in range(Gi.order):
                for b in range(Gi.order):
                    if m[Gi.table[a][b]] != Gj.table[m[a]][m[b]]:
                        raise LinkingMapNotHomomorphism(f"map ({i}, {j}) fails at ({a}, {b})")
            if i == j and m != tuple(range(Gi.order)):
                raise LinkingMapNotHomomorphism(f"map ({i}, {i}) must be the identity")
            phi[(i, j)] = m
    for (i, j), m in phi.items():
        for l in range(k):
            if below(l, j):
                direct = phi[(i, l)]
                if any(phi[(j, l)][m[a]] != direct[a] for a in range(len(m))):
                    raise LinkingMapsDoNotCompose(f"maps ({i},{j}), ({j},{l}) and ({i},{l}) disagree")

    elems = [(i, g) for i in range(k) for g in range(groups[i].order)]
    if len(elems) > MAX_ORDER:
        raise SizeExceeded(f"order {len(elems)} exceeds {MAX_ORDER}")
    index = {x: n for n, x in enumerate(elems)}
    table = []
    for i, g in elems:
        row = []
        for j, h in elems:
            m = Y.table[i][j]
            row.append(index[(m, groups[m].table[phi[(i, m)][g]][phi[(j, m)][h]])])
        table.append(row)
    S = validate(table, names=[f"{i}:{groups[i].names[g]}" for i, g in elems])
    from .classifiers import is_clifford

    if not is_clifford(S):
        raise ValueError("constructed semigroup is not Clifford")
    return S


def direct_product(S: FiniteInverseSemigroup, T: FiniteInverseSemigroup) -> FiniteInverseSemigroup:
    n, m = S.order, T.order
    if n * m > MAX_ORDER:
        raise SizeExceeded(f"product order {n * m} exceeds {MAX_ORDER}")
    table = [
        [S.table[a][c] * m + T.table[b][d] for c in range(n) for d in range(m)]
        for a in range(n)
        for b in range(m)
    ]
    names = [f"({x},{y})" for x in S.names for y in T.names]
    P = validate(table, names=names)
    expected = sorted(e * m + f for e in S.idempotent_set for f in T.idempotent_set)
    if list(P.idempotent_set) != expected:
        raise ValueError("idempotents of the product are not the pairs of idempotents")
    return P


def _fresh(names: Sequence[str], want: str) -> str:
    name = want
    while name in names:
        name += "'"
    return name


def adjoin_zero(S: FiniteInverseSemigroup) -> FiniteInverseSemigroup:
    """New zero at index 0; old elements shift up by one."""
    n = S.order
    if n + 1 > MAX_ORDER:
        raise SizeExceeded(f"order {n + 1} exceeds {MAX_ORDER}")
    table = [[0] * (n + 1)] + [[0] + [S.table[a][b] + 1 for b in range(n)] for a in range(n)]
    return validate(table, names=[_fresh(S.names, "0")] + list(S.names))


def adjoin_identity(S: FiniteInverseSemigroup) -> FiniteInverseSemigroup:
    """New identity at index n."""
    n = S.order
    if n + 1 > MAX_ORDER:
        raise SizeExceeded(f"order {n + 1} exceeds {MAX_ORDER}")
    table = [list(S.table[a]) + [a] for a in range(n)] + [list(range(n + 1))]
    return validate(table, names=list(S.names) + [_fresh(S.names, "1")])


# -- registry ---------------------------------------------------------------------


def _clifford3() -> FiniteInverseSemigroup:
    trivial = cyclic_group(1)
    z2 = cyclic_group(2)
    # top component Z2 over a trivial group at the bottom
    return strong_semilattice_of_groups([[0, 0], [0, 1]], [trivial, z2], {(1, 0): (0, 0)})


def _clifford4() -> FiniteInverseSemigroup:
    z2 = cyclic_group(2)
    return strong_semilattice_of_groups([[0, 0], [0, 1]], [z2, z2], {(1, 0): (0, 1)})


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable[[], FiniteInverseSemigroup]
    description: str
    expected_facts: tuple[tuple[str, object], ...] = field(default=())


def _facts(S: FiniteInverseSemigroup) -> dict[str, Callable[[], object]]:
    from . import classifiers as cl

    return {
        "order": lambda: S.order,
        "idempotents": lambda: len(S.idempotent_set),
        "group": lambda: cl.is_group(S).holds,
        "semilattice": lambda: cl.is_semilattice(S).holds,
        "clifford": lambda: cl.is_clifford(S).holds,
        "e_unitary": lambda: cl.is_e_unitary(S).holds,
    }


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("trivial", lambda: chain_semilattice(1), "trivial semigroup",
                     (("order", 1), ("group", True), ("semilattice", True))),
        CatalogEntry("c2", lambda: chain_semilattice(2), "two-element chain semilattice",
                     (("order", 2), ("idempotents", 2), ("semilattice", True), ("group", False))),
        CatalogEntry("c3", lambda: chain_semilattice(3), "three-element chain semilattice",
                     (("order", 3), ("semilattice", True))),
        CatalogEntry("z2", lambda: cyclic_group(2), "cyclic group of order 2",
                     (("order", 2), ("idempotents", 1), ("group", True))),
        CatalogEntry("z3", lambda: cyclic_group(3), "cyclic group of order 3",
                     (("order", 3), ("group", True))),
        CatalogEntry("s3", symmetric_group_s3, "symmetric group on three points",
                     (("order", 6), ("idempotents", 1), ("group", True))),
        CatalogEntry("b2", brandt_b2, "five-element Brandt semigroup",
                     (("order", 5), ("idempotents", 3), ("clifford", False), ("e_unitary", False))),
        CatalogEntry("i1", lambda: symmetric_inverse_monoid(1), "symmetric inverse monoid on one point",
                     (("order", 2), ("semilattice", True))),
        CatalogEntry("i2", lambda: symmetric_inverse_monoid(2), "symmetric inverse monoid on two points",
                     (("order", 7), ("idempotents", 4), ("clifford", False))),
        CatalogEntry("i3", lambda: symmetric_inverse_monoid(3), "symmetric inverse monoid on three points",
                     (("order", 34), ("idempotents", 8))),
        CatalogEntry("z2_0", lambda: adjoin_zero(cyclic_group(2)), "cyclic group of order 2 with zero adjoined",
                     (("order", 3), ("idempotents", 2), ("clifford", True))),
        CatalogEntry("c2xz2", lambda: direct_product(chain_semilattice(2), cyclic_group(2)),
                     "direct product of C2 and Z2",
                     (("order", 4), ("idempotents", 2), ("clifford", True))),
        CatalogEntry("clifford3", _clifford3, "Z2 over a trivial group (strong semilattice)",
                     (("order", 3), ("clifford", True))),
        CatalogEntry("clifford4", _clifford4, "Z2 over Z2 with identity linking map",
                     (("order", 4), ("clifford", True), ("e_unitary", True))),
        CatalogEntry("b2_1", lambda: adjoin_identity(brandt_b2()), "B2 with identity adjoined",
                     (("order", 6), ("idempotents", 4))),
    ]
}


def build(name: str) -> FiniteInverseSemigroup:
    """Build a catalog entry and re-check its recorded facts."""
    if name.startswith("builtin:"):
        name = name[len("builtin:"):]
    try:
        entry = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None
    S = _renamed(entry.builder(), name)
    facts = _facts(S)
    for prop, value in entry.expected_facts:
        got = facts[prop]()
        if got != value:
            raise AssertionError(f"catalog entry {name}: {prop} is {got!r}, expected {value!r}")
    return S


# -- formats -----------------------------------------------------------------------


def parse_cayley(text: str, name: str | None = None) -> FiniteInverseSemigroup:
    """Parse the .cay text format: order, n rows of n indices, optional ``names:`` line."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((lineno, body))
    if not lines:
        raise ParseError("empty input", line=1)

    def tokens(lineno: int, body: str):
        col = 0
        for tok in body.split():
            col = body.index(tok, col)
            yield tok, col + 1
            col += len(tok)

    def integer(tok: str, lineno: int, col: int) -> int:
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None

    lineno, body = lines[0]
    first = list(tokens(lineno, body))
    if len(first) != 1:
        raise ParseError("first line must hold only the order", lineno, first[1][1] if len(first) > 1 else 1)
    n = integer(first[0][0], lineno, first[0][1])
    if n < 1:
        raise ParseError("order must be positive", lineno, first[0][1])
    rows = []
    last_line = lineno
    for k in range(n):
        if k + 1 >= len(lines):
            raise ParseError(f"expected {n} table rows, found {k}", last_line + 1)
        lineno, body = lines[k + 1]
        last_line = lineno
        if body.strip().startswith("names:"):
            raise ParseError(f"expected {n} table rows, found {k}", lineno)
        toks = list(tokens(lineno, body))
        if len(toks) != n:
            col = toks[n][1] if len(toks) > n else len(body.rstrip()) + 1
            raise ParseError(f"row has {len(toks)} entries, expected {n}", lineno, col)
        rows.append([integer(tok, lineno, col) for tok, col in toks])
    names = None
    rest = lines[n + 1:]
    if rest:
        lineno, body = rest[0]
        stripped = body.strip()
        if not stripped.startswith("names:"):
            raise ParseError("unexpected content after the table", lineno, body.index(stripped[0]) + 1)
        names = stripped[len("names:"):].split()
        if len(names) != n:
            raise ParseError(f"expected {n} names, got {len(names)}", lineno)
        if len(rest) > 1:
            raise ParseError("unexpected content after the names line", rest[1][0])
    return validate(rows, names=names, name=name)


def parse_json(data: bytes | str) -> FiniteInverseSemigroup:
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("top-level value must be an object", 1)
    unknown = set(obj) - {"name", "order", "table", "element_names"}
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(sorted(unknown))}", 1)
    order, table = obj.get("order"), obj.get("table")
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise ParseError("'order' must be a positive integer", 1)
    if not isinstance(table, list) or len(table) != order:
        raise ParseError(f"'table' must be a list of {order} rows", 1)
    for k, row in enumerate(table):
        if not isinstance(row, list) or len(row) != order:
            raise ParseError(f"table row {k} must be a list of {order} integers", 1)
        if any(not isinstance(v, int) or isinstance(v, bool) for v in row):
            raise ParseError(f"table row {k} must contain only integers", 1)
    names = obj.get("element_names")
    if names is not None and (not isinstance(names, list) or not all(isinstance(s, str) for s in names)):
        raise ParseError("'element_names' must be a list of strings", 1)
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("'name' must be a string", 1)
    return validate(table, names=names, name=name)


def emit(S: FiniteInverseSemigroup, format: str = "cay") -> bytes:
    if format == "cay":
        lines = [str(S.order)] + [" ".join(map(str, row)) for row in S.table]
        if not S.default_names():
            if any(not s or any(ch.isspace() for ch in s) or "#" in s for s in S.names):
                raise ValueError("element names with whitespace or '#' cannot be written to .cay")
            lines.append("names: " + " ".join(S.names))
        return ("\n".join(lines) + "\n").encode("utf-8")
    if format == "json":
        obj: dict = {}
        if S.name:
            obj["name"] = S.name
        obj["order"] = S.order
        obj["table"] = [list(row) for row in S.table]
        if not S.default_names():
            obj["element_names"] = list(S.names)
        return (json.dumps(obj, ensure_ascii=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {format!r}; expected 'cay' or 'json'")


def load(source: str) -> FiniteInverseSemigroup:
    """A file path, or ``builtin:NAME`` for a catalog entry."""
    if source.startswith("builtin:"):
        return build(source)
    path = Path(source)
    data = path.read_bytes()
    if path.suffix.lower() == ".json" or data.lstrip()[:1] == b"{":
        return parse_json(data)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("input is not valid UTF-8", 1) from exc
    return parse_cayley(text, name=path.stem)


__all__ = [
    "CATALOG",
    "CatalogEntry",
    "adjoin_identity",
    "adjoin_zero",
    "brandt_b2",
    "build",
    "chain_semilattice",
    "cyclic_group",
    "direct_product",
    "emit",
    "load",
    "parse_cayley",
    "parse_json",
    "strong_semilattice_of_groups",
    "symmetric_group_s3",
    "symmetric_inverse_monoid",
]
