import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import inverse_semigroups
from isg import catalog
from isg.congruences import (
    Congruence,
    closure,
    compatibility_witness,
    congruence,
    enumerate_congruences,
    equality,
    is_congruence,
    join,
    kernel,
    kernel_trace_test,
    meet,
    min_chain,
    mu,
    mu_fast,
    pull_congruence,
    push_congruence,
    quotient,
    restrict_congruence,
    rho_k,
    rho_k_routes,
    rho_t,
    rho_t_pointwise,
    rho_t_routes,
    sigma,
    tau,
    trace,
    try_enumerate,
    universal,
)
from isg.errors import EnumerationCapExceeded, InvalidWord, NotAbove, ParentMismatch
from isg.network import min_network
from isg.partition import Partition
from isg.semigroup import greens, is_isomorphic, substructure


@pytest.fixture(scope="module")
def I2():
    return catalog.build("i2")


def _by_names(S, *names):
    return [S.names.index(n) for n in names]


def test_closure_examples(small_catalog):
    C2, B2 = small_catalog["c2"], small_catalog["b2"]
    assert closure(C2, []).is_equality()
    assert closure(C2, [(0, 1)]).is_universal()
    e, f = _by_names(B2, "e", "f")
    assert closure(B2, [(e, f)]).is_universal()
    assert [c.rep for c in enumerate_congruences(B2)] == [universal(B2).rep, equality(B2).rep]


def test_b2_compatibility_failure(small_catalog):
    B2 = small_catalog["b2"]
    zero, e = _by_names(B2, "0", "e")
    P = Partition.from_pairs(5, [(zero, e)])
    assert not is_congruence(B2, P)
    assert compatibility_witness(B2, P) is not None
    with pytest.raises(ValueError):
        congruence(B2, P)


def test_i2_named_congruences(I2):
    lattice = enumerate_congruences(I2)
    counts = sorted(c.num_classes for c in lattice)
    assert counts == [1, 2, 3, 7]
    beta1 = min_network(I2).beta(1)
    ident = I2.names.index("[12]")
    swap = I2.names.index("[21]")
    # trace of beta_1: the idempotents below the identity together, the identity alone
    tr = trace(beta1)
    assert tr.class_of(ident) == [ident]
    assert tr.class_of(0) == [e for e in I2.idempotent_set if e != ident]
    alpha2 = rho_t(beta1)
    assert alpha2.num_classes == 3
    assert alpha2.class_of(ident) == [ident] and alpha2.class_of(swap) == [swap]
    assert min_chain(universal(I2), "kt") == alpha2
    assert rho_t(universal(I2)).is_universal()
    M = meet(alpha2, beta1)
    assert M <= alpha2 and M <= beta1 and is_congruence(I2, M.base)


def test_operator_examples(small_catalog):
    C2, Z2, Z3 = small_catalog["c2"], small_catalog["z2"], small_catalog["z3"]
    assert rho_t(equality(C2)).is_equality() and rho_k(equality(C2)).is_equality()
    assert rho_k(universal(C2)).is_equality()
    assert rho_k(universal(Z2)).is_universal()
    assert min_chain(universal(Z3), "t").is_equality()
    with pytest.raises(InvalidWord):
        min_chain(universal(Z3), "tx")
    with pytest.raises(InvalidWord):
        min_chain(universal(Z3), "")


def test_extremal_examples(small_catalog, I2):
    C2, Z2, B2, S3 = (small_catalog[k] for k in ("c2", "z2", "b2", "s3"))
    assert sigma(C2).is_universal() and sigma(Z2).is_equality() and sigma(I2).is_universal()
    assert mu(S3).is_universal() and mu(C2).is_equality() and mu(B2).is_equality()
    assert tau(S3).is_equality() and tau(C2).is_universal() and tau(B2).is_equality()
    assert kernel(equality(I2)) == list(I2.idempotent_set)
    assert kernel(universal(I2)) == list(range(7))


def test_quotients(small_catalog, I2):
    Q, proj = quotient(I2, universal(I2))
    assert Q.order == 1 and set(proj) == {0}
    Q, _ = quotient(I2, equality(I2))
    assert Q.table == I2.table
    alpha2 = min_network(I2).alpha(2)
    Q, _ = quotient(I2, alpha2)
    assert Q.order == 3 and is_isomorphic(Q, small_catalog["z2_0"])


def test_push_pull(I2):
    lattice = enumerate_congruences(I2)
    for rho in lattice:
        assert push_congruence(rho, rho).is_equality()
        assert push_congruence(universal(I2), rho).is_universal()
        for theta in lattice:
            if rho <= theta:
                pushed = push_congruence(theta, rho)
                assert pull_congruence(pushed, rho) == theta
                # (S/rho)/(theta/rho) has the shape of S/theta
                Q2, _ = quotient(pushed.parent, pushed)
                assert is_isomorphic(Q2, quotient(I2, theta)[0])
            else:
                with pytest.raises(NotAbove):
                    push_congruence(theta, rho)


def test_parent_mismatch(small_catalog):
    with pytest.raises(ParentMismatch):
        join(universal(small_catalog["c2"]), universal(small_catalog["z2"]))


def test_restriction(I2):
    beta1 = min_network(I2).beta(1)
    for c in beta1.idempotent_classes():
        Y = substructure(I2, c)
        assert restrict_congruence(beta1, Y).is_universal()
        assert restrict_congruence(equality(I2), Y).is_equality()
        assert greens(I2, "L").restrict(Y.members) == greens(Y.semigroup, "L")


def test_enumeration_cap(I2, monkeypatch):
    with pytest.raises(EnumerationCapExceeded) as exc:
        enumerate_congruences(I2, cap=2)
    assert len(exc.value.partial) >= 2
    assert try_enumerate(I2, cap=2) is None
    monkeypatch.setenv("ISG_ENUM_CAP", "2")
    assert try_enumerate(I2) is None


@given(inverse_semigroups(max_order=7))
def test_lattice_matches_partition_scan(S):
    got = [c.rep for c in enumerate_congruences(S)]
    expected = list(oracles.congruence_lattice(S.table))
    assert sorted(got) == sorted(expected)
    assert got[0] == tuple([0] * S.order)
    keys = [(len(set(r)), r) for r in got]
    assert keys == sorted(keys)


@given(inverse_semigroups(max_order=7), st.data())
def test_closure_is_least_containing(S, data):
    n = S.order
    pairs = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3))
    c = closure(S, pairs)
    assert c.rep == oracles.least_containing(S.table, pairs)
    assert all(c.related(a, b) for a, b in pairs)
    assert closure(S, list(c.base.pairs())) == c


@given(inverse_semigroups(max_order=7), st.data())
def test_operators_match_definitions(S, data):
    lattice = enumerate_congruences(S)
    rho = data.draw(st.sampled_from(lattice))
    t, k = rho_t(rho), rho_k(rho)
    assert t.rep == oracles.least_same_trace(S.table, rho.rep)
    assert k.rep == oracles.least_same_kernel(S.table, rho.rep)
    assert t <= rho and k <= rho
    assert trace(t) == trace(rho) and set(kernel(k)) == set(kernel(rho))
    assert rho_t(t) == t and rho_k(k) == k
    routes = list(rho_t_routes(rho).values()) + [t]
    assert all(r == t for r in routes)
    assert all(r == k for r in rho_k_routes(rho).values())
    for a in range(S.order):
        for b in range(S.order):
            assert rho_t_pointwise(rho, a, b) == t.related(a, b)
            assert kernel_trace_test(rho, a, b) == rho.related(a, b)


@given(inverse_semigroups(max_order=7))
def test_extremal_congruences_match_definitions(S):
    assert sigma(S).rep == oracles.least_with_quotient(S.table, oracles.is_group)
    assert mu(S).rep == oracles.mu(S.table) == mu_fast(S).rep
    assert tau(S).rep == oracles.tau(S.table)


@given(inverse_semigroups(max_order=7))
def test_lattice_is_closed(S):
    lattice = enumerate_congruences(S)
    reps = {c.rep for c in lattice}
    for a in lattice:
        for b in lattice:
            assert join(a, b).rep in reps and meet(a, b).rep in reps
            assert a <= join(a, b) and meet(a, b) <= a


def test_congruence_requires_same_length(small_catalog):
    with pytest.raises(ValueError):
        Congruence(small_catalog["c2"], Partition.equality(3))
