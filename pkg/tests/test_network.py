import pytest
from hypothesis import given

import oracles
from conftest import inverse_semigroups
from isg import catalog
from isg.congruences import enumerate_congruences, push_congruence, quotient, sigma
from isg.errors import DepthExceeded, IndexOrder, NotAbove
from isg.network import min_network, network_on_quotient, render_network_dot, require_stable


def _counts(seq):
    return [c.num_classes for c in seq]


def test_c2_network():
    rep = min_network(catalog.build("c2"))
    assert rep.stabilization_index == 2
    assert [rep.alpha(i).is_universal() for i in range(4)] == [True, True, False, False]
    assert [rep.beta(i).is_universal() for i in range(4)] == [True, False, False, False]
    assert rep.alpha(9).is_equality()


def test_z2_network():
    rep = min_network(catalog.build("z2"))
    assert rep.stabilization_index == 2
    assert [rep.alpha(i).is_universal() for i in range(3)] == [True, False, False]
    assert [rep.beta(i).is_universal() for i in range(4)] == [True, True, False, False]


def test_b2_network_is_constant():
    rep = min_network(catalog.build("b2"))
    assert rep.stabilization_index == 1
    assert all(rep.alpha(i).is_universal() and rep.beta(i).is_universal() for i in range(6))


def test_i2_network():
    I2 = catalog.build("i2")
    rep = min_network(I2)
    assert rep.beta(1).num_classes == 2 and rep.alpha(2).num_classes == 3
    assert rep.beta(2) == rep.beta(1) and rep.alpha(3) == rep.alpha(2)
    assert rep.stabilization_index is not None
    assert rep.aliases["sigma"] == sigma(I2)
    assert rep.aliases["lambda"] == rep.beta(3)
    assert rep.findings == []


def test_depth_exceeded():
    rep = min_network(catalog.build("i2"), 1)
    assert rep.stabilization_index is None
    with pytest.raises(DepthExceeded):
        require_stable(rep)
    with pytest.raises(DepthExceeded):
        rep.alpha(5)
    with pytest.raises(ValueError):
        min_network(catalog.build("i2"), 0)


def test_network_on_quotient():
    I2 = catalog.build("i2")
    native, pushed = network_on_quotient(I2, 2, "alpha", 1, "alpha")
    assert native == pushed
    native, _ = network_on_quotient(I2, 2, "alpha", 0, "beta")
    assert native.is_universal()
    native, _ = network_on_quotient(I2, 2, "alpha", 2, "alpha")
    assert native.is_equality()
    with pytest.raises(IndexOrder):
        network_on_quotient(I2, 1, "alpha", 2, "alpha")
    # on C2, alpha_1 = omega is not inside beta_1 = epsilon, so beta_1/alpha_1 is undefined
    with pytest.raises(NotAbove):
        network_on_quotient(catalog.build("c2"), 1, "alpha", 1, "beta")


def test_dot_rendering():
    dot = render_network_dot(min_network(catalog.build("trivial")))
    assert dot.count("[label=") == 1
    dot = render_network_dot(min_network(catalog.build("i2")))
    assert "β₁ (η) = β₂ (π)" in dot
    assert dot == render_network_dot(min_network(catalog.build("i2")))
    c2 = render_network_dot(min_network(catalog.build("c2")))
    assert "ω = α₁ (σ)" in c2 and "2 classes" in c2 and "->" in c2


@given(inverse_semigroups(max_order=7))
def test_network_matches_brute_force_and_recursion(S):
    rep = require_stable(min_network(S))
    alphas, betas = oracles.min_network(S.table, depth=rep.stabilization_index + 2)
    for i in range(len(alphas)):
        assert rep.alpha(i).rep == alphas[i]
        assert rep.beta(i).rep == betas[i]
    for i in range(1, len(rep.alphas)):
        assert rep.meets[i].rep == tuple(
            oracles.meet_all([rep.alphas[i].rep, rep.betas[i].rep], S.order))
    assert rep.findings == []


@given(inverse_semigroups(max_order=7))
def test_aliases_are_least_in_their_classes(S):
    rep = require_stable(min_network(S))
    checks = {
        "sigma": oracles.is_group,
        "eta": oracles.is_semilattice,
        "nu": oracles.is_clifford,
        "pi": oracles.is_e_unitary,
        "lambda": oracles.is_e_reflexive,
    }
    for alias, pred in checks.items():
        assert rep.aliases[alias].rep == oracles.least_with_quotient(S.table, pred), alias


@given(inverse_semigroups(max_order=7))
def test_quotient_transfer(S):
    rep = require_stable(min_network(S))
    for n in range(4):
        for by in ("alpha", "beta"):
            rho = rep.get(by, n)
            Q, _ = quotient(S, rho)
            qrep = require_stable(min_network(Q))
            for i in range(n + 1):
                for side in ("alpha", "beta"):
                    target = rep.get(side, i)
                    if rho <= target:
                        assert qrep.get(side, i) == push_congruence(target, rho)


def test_every_lattice_member_is_reachable_only_through_descent():
    # stabilization happens within the lattice size on the I3 corpus member
    I3 = catalog.build("i3")
    rep = require_stable(min_network(I3))
    assert rep.stabilization_index <= len(enumerate_congruences(I3))
