import json

import pytest

from isg import verifier
from isg.classifiers import ClassVerdict
from isg.congruences import Congruence
from isg.verifier import (
    SUITES,
    VerdictReport,
    default_corpus,
    run_suite,
    run_suites,
    subcorpus,
    suite_least_lemma,
)


@pytest.fixture(scope="module")
def corpus():
    return default_corpus()


@pytest.fixture(scope="module")
def small(corpus):
    return subcorpus(corpus, ["c2", "z2", "b2", "i2", "z2_0"])


def test_default_corpus_shape(corpus):
    names = [m.name for m in corpus]
    for base in ("c2", "c3", "z2", "z3", "s3", "b2", "i1", "i2", "i3", "z2_0", "c2xz2", "clifford3", "clifford4"):
        assert base in names
    quotients = [m for m in corpus if "/" in m.name]
    assert quotients
    prints = [(m.semigroup.order, len(m.semigroup.idempotent_set)) for m in quotients]
    assert len(prints) == len(set(prints))
    base_prints = {(m.semigroup.order, len(m.semigroup.idempotent_set)) for m in corpus if "/" not in m.name}
    assert not set(prints) & base_prints


def test_subcorpus_keeps_quotients(corpus):
    sub = subcorpus(corpus, ["i3"])
    assert [m.name for m in sub][0] == "i3" and all(m.name.startswith("i3") for m in sub)


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes_on_small_corpus(small, suite):
    report = run_suite(suite, small)
    assert report.status == "pass", report.failures[:2]
    assert report.instances_checked > 0


def test_least_lemma_counts(corpus):
    c2 = subcorpus(corpus, ["c2"])[:1]
    report = suite_least_lemma(c2)
    # two congruences, four ordered pairs, two equivalences each
    assert report.instances_checked == 8


def test_ab_counts_undefined_pushes(small):
    report = run_suite("ab", small)
    assert report.not_applicable > 0


def test_report_serialization():
    r = VerdictReport("x")
    assert r.status == "pass"
    d = json.loads(r.to_json())
    assert set(d) == {"suite", "status", "instances_checked", "not_applicable", "skipped", "failures"}
    assert "elapsed" in json.loads(r.to_json(timings=True))
    r.skipped.append("s")
    assert r.status == "skipped"


def test_capped_enumeration_skips(corpus):
    report = run_suite("least", subcorpus(corpus, ["i2"])[:1], cap=1)
    assert report.status == "skipped" and report.skipped == ["i2"]


def test_runs_are_deterministic(small):
    a = [r.to_json() for r in run_suites(["formulas", "lemmas", "bundles"], small)]
    b = [r.to_json() for r in run_suites(["formulas", "lemmas", "bundles"], small)]
    assert a == b


def test_suites_detect_a_broken_operator(small, monkeypatch):
    # an operator that returns its argument violates the least-congruence equivalence
    monkeypatch.setattr(verifier, "rho_t", lambda rho: rho)
    report = suite_least_lemma(small)
    assert report.status == "fail"
    f = report.failures[0]
    assert set(f) >= {"semigroup", "table", "congruence", "witness", "condition"}


def test_failed_class_checks_are_revalidated(small, monkeypatch):
    def liar(S):
        # claims failure with a witness that does not refute anything
        return ClassVerdict("clifford", False, (S.idempotent_set[0], S.idempotent_set[0]))

    monkeypatch.setattr(verifier, "is_clifford", liar)
    report = run_suite("rel", small)
    assert report.status == "fail"
    rechecked = [f["witness_revalidated"] for f in report.failures if "witness_revalidated" in f]
    assert rechecked and not any(rechecked)


def test_network_suite_detects_wrong_alias(small, monkeypatch):
    from isg import network

    original = network.ALIASES
    monkeypatch.setattr(verifier, "ALIASES", {**original, "nu": ("beta", 1)})
    report = run_suite("network", small)
    assert report.status == "fail"


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", [])


def test_congruence_records_use_rep_arrays(small, monkeypatch):
    monkeypatch.setattr(verifier, "rho_k", lambda rho: Congruence(rho.parent, rho.base))
    report = suite_least_lemma(small)
    assert report.failures
    for f in report.failures:
        assert isinstance(f["congruence"], list)
