"""Brute-force reference implementations, written straight from the definitions.

Nothing here imports the closure, operator or classifier code under test; the
only shared piece is the validated table itself. Partition enumeration is
exponential (Bell numbers), so keep orders at 8 or below.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def set_partitions(n: int):
    """All partitions of 0..n-1 as canonical rep tuples (rep[i] = least member of i's block)."""

    def rec(i, blocks):
        if i == n:
            rep = [0] * n
            for b in blocks:
                for x in b:
                    rep[x] = b[0]
            yield tuple(rep)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def compatible(table, rep) -> bool:
    n = len(table)
    for a in range(n):
        for b in range(a + 1, n):
            if rep[a] != rep[b]:
                continue
            for c in range(n):
                if rep[table[c][a]] != rep[table[c][b]] or rep[table[a][c]] != rep[table[b][c]]:
                    return False
    return True


@lru_cache(maxsize=None)
def congruence_lattice(table) -> tuple[tuple[int, ...], ...]:
    return tuple(r for r in set_partitions(len(table)) if compatible(table, r))


def related(rep, a, b) -> bool:
    return rep[a] == rep[b]


def contained(r1, r2) -> bool:
    return all(r2[i] == r2[j] for i in range(len(r1)) for j in range(len(r1)) if r1[i] == r1[j])


def meet_all(reps, n):
    """Intersection of a family of partitions (the universal one if the family is empty)."""
    labels = [tuple(r[i] for r in reps) for i in range(n)]
    first = {}
    return tuple(first.setdefault(lab, i) for i, lab in enumerate(labels))


def idempotents(table):
    return [e for e in range(len(table)) if table[e][e] == e]


def inverse(table, a):
    found = [x for x in range(len(table)) if table[table[a][x]][a] == a and table[table[x][a]][x] == x]
    assert len(found) == 1, found
    return found[0]


def least_containing(table, pairs):
    lat = congruence_lattice(table)
    return meet_all([r for r in lat if all(r[a] == r[b] for a, b in pairs)], len(table))


def trace_pairs(table, rep):
    E = idempotents(table)
    return frozenset((e, f) for e in E for f in E if rep[e] == rep[f])


def kernel_set(table, rep):
    E = idempotents(table)
    return frozenset(a for a in range(len(table)) if any(rep[a] == rep[e] for e in E))


def least_same_trace(table, rep):
    tr = trace_pairs(table, rep)
    lat = congruence_lattice(table)
    return meet_all([r for r in lat if trace_pairs(table, r) == tr], len(table))


def least_same_kernel(table, rep):
    k = kernel_set(table, rep)
    lat = congruence_lattice(table)
    return meet_all([r for r in lat if kernel_set(table, r) == k], len(table))


def quotient_table(table, rep):
    reps = sorted(set(rep))
    idx = {r: i for i, r in enumerate(reps)}
    return tuple(tuple(idx[rep[table[a][b]]] for b in reps) for a in reps)


# -- class predicates from the definitions -----------------------------------------


def is_group(table) -> bool:
    n = len(table)
    return all(any(table[a][x] == b for x in range(n)) and any(table[x][a] == b for x in range(n))
               for a in range(n) for b in range(n))


def is_semilattice(table) -> bool:
    n = len(table)
    return all(table[a][a] == a for a in range(n)) and all(
        table[a][b] == table[b][a] for a in range(n) for b in range(n))


def is_clifford(table) -> bool:
    n = len(table)
    return all(table[a][e] == table[e][a] for a in range(n) for e in idempotents(table))


def is_e_unitary(table) -> bool:
    n = len(table)
    return all(table[y][y] == y for x in range(n) for y in range(n) if table[x][y] == x)


def is_e_reflexive(table) -> bool:
    n = len(table)
    E = idempotents(table)
    return all(
        table[table[table[y][e]][x]][table[table[y][e]][x]] == table[table[y][e]][x]
        for x, y, e in product(range(n), range(n), E)
        if table[table[table[x][e]][y]][table[table[x][e]][y]] == table[table[x][e]][y]
    )


def sub_table(table, members):
    members = sorted(members)
    idx = {m: i for i, m in enumerate(members)}
    return tuple(tuple(idx[table[a][b]] for b in members) for a in members)


def e_omega(table):
    n = len(table)
    E = idempotents(table)
    # e <= x in the natural order iff e = f x for some idempotent f
    return sorted(x for x in range(n) if any(table[f][x] == e for e in E for f in E))


def is_e_omega_clifford(table) -> bool:
    return is_clifford(sub_table(table, e_omega(table)))


# -- extremal congruences -----------------------------------------------------------


def least_with_quotient(table, pred):
    lat = congruence_lattice(table)
    good = [r for r in lat if pred(quotient_table(table, r))]
    least = meet_all(good, len(table))
    assert least in good
    return least


def greatest(table, pred):
    lat = congruence_lattice(table)
    good = [r for r in lat if pred(r)]
    tops = [r for r in good if all(contained(g, r) for g in good)]
    assert len(tops) == 1
    return tops[0]


def mu(table):
    E = idempotents(table)
    return greatest(table, lambda r: len({r[e] for e in E}) == len(E))


def tau(table):
    return greatest(table, lambda r: kernel_set(table, r) == frozenset(idempotents(table)))


def min_network(table, depth=12):
    """(alphas, betas) computed with the brute least-same-trace / least-same-kernel."""
    n = len(table)
    omega = tuple([0] * n)
    alphas, betas = [omega], [omega]
    for _ in range(depth):
        a = least_same_trace(table, betas[-1])
        b = least_same_kernel(table, alphas[-1])
        alphas.append(a)
        betas.append(b)
    return alphas, betas


# -- Green's relations and the natural order --------------------------------------


def principal_left_ideal(table, a):
    return frozenset([a] + [table[s][a] for s in range(len(table))])


def principal_right_ideal(table, a):
    return frozenset([a] + [table[a][s] for s in range(len(table))])


def greens_L(table, a, b):
    return principal_left_ideal(table, a) == principal_left_ideal(table, b)


def greens_R(table, a, b):
    return principal_right_ideal(table, a) == principal_right_ideal(table, b)


def natural_leq(table, a, b):
    return any(table[e][b] == a for e in idempotents(table))
