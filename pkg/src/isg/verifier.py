"""Theorem suites run over a corpus of small inverse semigroups.

Each suite returns a :class:`VerdictReport`. Reports are deterministic: the
corpus, the congruence lattices and every loop below iterate in a fixed order,
and the serialized form omits timing unless asked for.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable

from . import catalog
from .classifiers import (
    BUNDLES,
    ClassVerdict,
    class_substructure,
    congruence_bundle,
    is_clifford,
    is_e_omega_clifford,
    is_e_reflexive,
    is_e_unitary,
    is_group,
    is_semilattice,
    is_beta_n_over_e_unitary,
    is_ker_alpha_n_clifford,
    kernel_of_class_sigma,
    witness_refutes,
)
from .congruences import (
    Congruence,
    closure,
    equality,
    join,
    kernel_trace_test,
    min_chain,
    mu_fast,
    principal_congruences,
    push_congruence,
    quotient,
    restrict_congruence,
    rho_k,
    rho_k_routes,
    rho_t,
    rho_t_pointwise,
    rho_t_routes,
    sigma,
    try_enumerate,
    universal,
)
from .errors import ISGError, NotAbove
from .network import ALIASES, min_network, network_on_quotient, require_stable
from .partition import Partition
from .semigroup import (
    FiniteInverseSemigroup,
    SubStructure,
    centralizer_of_idempotents,
    e_closure,
    f_relation,
    greens,
)

BASE_CORPUS = (
    "trivial", "c2", "c3", "z2", "z3", "s3", "b2", "i1", "i2", "i3",
    "z2_0", "c2xz2", "clifford3", "clifford4",
)
SUITES = (
    "formulas", "least", "quotient", "min", "ab", "kernel",
    "bundles", "rel", "main", "lemmas", "network",
)
MAX_WORD = 5
AB_N_MAX = 4
REL_N_MAX = 2
MAIN_N_MAX = 1


@dataclass(frozen=True)
class CorpusMember:
    name: str
    semigroup: FiniteInverseSemigroup


def _fingerprint(S: FiniteInverseSemigroup) -> tuple[int, int]:
    return (S.order, len(S.idempotent_set))


def default_corpus(
    names: Iterable[str] = BASE_CORPUS, with_quotients: bool = True, cap: int | None = None
) -> list[CorpusMember]:
    """Catalog entries followed by their quotients, one per new (order, |E|) fingerprint."""
    base = [CorpusMember(n, catalog.build(n)) for n in names]
    members = list(base)
    if not with_quotients:
        return members
    seen = {_fingerprint(m.semigroup) for m in base}
    for m in base:
        lattice = try_enumerate(m.semigroup, cap)
        if lattice is None:
            continue
        for k, rho in enumerate(lattice):
            Q, _ = quotient(m.semigroup, rho)
            fp = _fingerprint(Q)
            if fp in seen:
                continue
            seen.add(fp)
            members.append(CorpusMember(f"{m.name}/q{k}", Q))
    return members


@dataclass
class VerdictReport:
    suite: str
    instances_checked: int = 0
    failures: list[dict] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    not_applicable: int = 0
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.instances_checked == 0 and self.skipped:
            return "skipped"
        return "pass"

    def as_dict(self, timings: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "status": self.status,
            "instances_checked": self.instances_checked,
            "not_applicable": self.not_applicable,
            "skipped": list(self.skipped),
            "failures": list(self.failures),
        }
        if timings:
            d["elapsed"] = round(self.elapsed, 3)
        return d

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.as_dict(timings), sort_keys=True, separators=(",", ":"))

    def check(
        self,
        member: CorpusMember,
        condition: str,
        ok: bool,
        congruence: Congruence | None = None,
        witness: Iterable[int] = (),
        detail: str | None = None,
        revalidated: bool | None = None,
    ) -> bool:
        self.instances_checked += 1
        if not ok:
            record = {
                "semigroup": member.name,
                "table": [list(r) for r in member.semigroup.table],
                "congruence": None if congruence is None else list(congruence.rep),
                "witness": [int(x) for x in witness],
                "condition": condition,
            }
            if detail:
                record["detail"] = detail
            if revalidated is not None:
                record["witness_revalidated"] = revalidated
            self.failures.append(record)
        return ok

    def check_class(
        self,
        member: CorpusMember,
        condition: str,
        on: FiniteInverseSemigroup,
        verdict: ClassVerdict,
        congruence: Congruence | None = None,
    ) -> bool:
        """Record a class verdict; a refuting witness is re-checked on ``on``."""
        revalidated = None
        if not verdict.holds:
            revalidated = witness_refutes(on, verdict.class_name, verdict.witness)
        return self.check(
            member, condition, verdict.holds, congruence, verdict.witness or (), revalidated=revalidated
        )

    def error(self, member: CorpusMember, condition: str, exc: Exception, congruence=None) -> None:
        self.check(member, condition, False, congruence, detail=f"{type(exc).__name__}: {exc}")


def _lattice(report: VerdictReport, member: CorpusMember, cap) -> list[Congruence] | None:
    lattice = try_enumerate(member.semigroup, cap)
    if lattice is None:
        report.skipped.append(member.name)
    return lattice


def _first_difference(a: Partition, b: Partition) -> tuple[int, ...]:
    pair = a.first_unrefined_pair(b) or b.first_unrefined_pair(a)
    return pair or ()


def _chain(rho: Congruence, word: str) -> Congruence:
    return min_chain(rho, word) if word else rho


def _idempotent_class(rho: Congruence, e: int) -> SubStructure:
    return class_substructure(rho.parent, tuple(rho.class_of(e)))


# -- suites ----------------------------------------------------------------------------


def suite_formulas(corpus: list[CorpusMember], cap=None) -> VerdictReport:
    """Every route to rho_t and rho_k agrees, and the kernel-trace membership test
    reproduces the congruence."""
    r = VerdictReport("formulas")
    for m in corpus:
        lattice = _lattice(r, m, cap)
        if lattice is None:
            continue
        S = m.semigroup
        for rho in lattice:
            t_routes = list(rho_t_routes(rho).values())
            r.check(m, "rho_t_routes_agree", all(c == t_routes[0] for c in t_routes), rho,
                    _first_difference(t_routes[0].base, t_routes[-1].base))
            rt = t_routes[0]
            bad = next(((a, b) for a in range(S.order) for b in range(S.order)
                        if rt.related(a, b) != rho_t_pointwise(rho, a, b)), ())
            r.check(m, "rho_t_pointwise", not bad, rho, bad)
            k_routes = list(rho_k_routes(rho).values())
            r.check(m, "rho_k_routes_agree", all(c == k_routes[0] for c in k_routes), rho,
                    next((_first_difference(k_routes[0].base, c.base) for c in k_routes
                          if c != k_routes[0]), ()))
            bad = next(((a, b) for a in range(S.order) for b in range(S.order)
                        if rho.related(a, b) != kernel_trace_test(rho, a, b)), ())
            r.check(m, "kernel_trace_test", not bad, rho, bad)
    return r


def suite_least_lemma(corpus: list[CorpusMember], cap=None) -> VerdictReport:
    r = VerdictReport("least")
    for m in corpus:
        lattice = _lattice(r, m, cap)
        if lattice is None:
            continue
        for rho, theta in product(lattice, repeat=2):
            lhs = rho.trace <= theta.trace
            r.check(m, "trace_inclusion_iff_rho_t_below", lhs == (rho_t(rho) <= theta), rho,
                    theta.rep)
            lhs = rho.kernel_set <= theta.kernel_set
            r.check(m, "kernel_inclusion_iff_rho_k_below", lhs == (rho_k(rho) <= theta), rho,
                    theta.rep)
    return r


def suite_quotient_lemma(corpus: list[CorpusMember], cap=None) -> VerdictReport:
    r = VerdictReport("quotient")
    for m in corpus:
        lattice = _lattice(r, m, cap)
        if lattice is None:
            continue
        for rho in lattice:
            above = [th for th in lattice if rho <= th]
            pushed = {th: push_congruence(th, rho) for th in above}
            eps_q = equality(pushed[rho].parent)
            for gamma, theta in product(above, repeat=2):
                pg, pt = pushed[gamma], pushed[theta]
                r.check(m, "trace_transfer", (pg.trace == pt.trace) == (gamma.trace == theta.trace),
                        rho, gamma.rep + theta.rep)
                r.check(m, "kernel_transfer",
                        (pg.kernel_set == pt.kernel_set) == (gamma.kernel_set == theta.kernel_set),
                        rho, gamma.rep + theta.rep)
            for theta in above:
                if theta.trace == rho.trace:
                    r.check(m, "equal_trace_pushes_to_equality_trace",
                            pushed[theta].trace == eps_q.trace, rho, theta.rep)
                if theta.kernel_set == rho.kernel_set:
                    r.check(m, "equal_kernel_pushes_to_equality_kernel",
                            pushed[theta].kernel_set == eps_q.kernel_set, rho, theta.rep)
    return r


def suite_min_prop(corpus: list[CorpusMember], cap=None) -> VerdictReport:
    r = VerdictReport("min")
    for m in corpus:
        lattice = _lattice(r, m, cap)
        if lattice is None:
            continue
        for rho in lattice:
            for theta in lattice:
                if not rho <= theta:
                    continue
                pushed = push_congruence(theta, rho)
                for op, name in ((rho_t, "t"), (rho_k, "k")):
                    native = op(pushed)
                    via_join = push_congruence(join(rho, op(theta)), rho)
                    r.check(m, f"quotient_rho_{name}", native == via_join, rho,
                            _first_difference(native.base, via_join.base))
                    if rho <= op(theta):
                        r.check(m, f"quotient_rho_{name}_particular",
                                native == push_congruence(op(theta), rho), rho, theta.rep)
    return r


def suite_ab_prop(corpus: list[CorpusMember], n_max: int = AB_N_MAX, cap=None) -> VerdictReport:
    """Network members computed on S/alpha_n and S/beta_n against the pushed ones.

    Pairs where the pushed congruence is undefined are counted as not applicable.
    """
    r = VerdictReport("ab")
    for m in corpus:
        for n in range(n_max + 1):
            for by, i, side in product(("alpha", "beta"), range(n + 1), ("alpha", "beta")):
                cond = f"{side}_{i}_on_quotient_by_{by}_{n}"
                try:
                    native, pushed = network_on_quotient(m.semigroup, n, by, i, side, check=False)
                except NotAbove:
                    r.not_applicable += 1
                    continue
                except ISGError as exc:
                    r.error(m, cond, exc)
                    continue
                r.check(m, cond, native == pushed, None, _first_difference(native.base, pushed.base))
    return r


def suite_kernel_prop(corpus: list[CorpusMember], cap=None) -> VerdictReport:
    r = VerdictReport("kernel")
    for m in corpus:
        lattice = _lattice(r, m, cap)
        if lattice is None:
            continue
        for rho in lattice:
            for e in m.semigroup.idempotent_set:
                try:
                    kernel_of_class_sigma(m.semigroup, rho, e)
                except ISGError as exc:
                    r.error(m, "kernel_of_class_sigma", exc, rho)
                else:
                    r.check(m, "kernel_of_class_sigma", True)
    return r


def _bundle_congruences(S: FiniteInverseSemigroup, cap) -> tuple[list[Congruence], bool]:
    lattice = try_enumerate(S, cap)
    if lattice is not None:
        return lattice, True
    rep = require_stable(min_network(S))
    extra = rep.alphas + rep.betas + rep.meets + [sigma(S), mu_fast(S), equality(S)]
    unique: list[Congruence] = []
    for c in extra:
        if c not in unique:
            unique.append(c)
    return sorted(unique, key=lambda c: (c.num_classes, c.rep)), False


def suite_bundles(corpus: list[CorpusMember], cap=None) -> VerdictReport:
    r = VerdictReport("bundles")
    for m in corpus:
        congs, full = _bundle_congruences(m.semigroup, cap)
        if not full:
            r.skipped.append(f"{m.name} (lattice capped; network congruences only)")
        for rho in congs:
            for b in BUNDLES:
                try:
                    v = congruence_bundle(m.semigroup, rho, b, cap)
                except ISGError as exc:
                    r.error(m, f"bundle_{b}", exc, rho)
                    continue
                dissent = [i for i, x in enumerate(v.condition_results) if x is not None and not x]
                r.check(m, f"bundle_{b}", v.holds, rho, dissent,
                        detail=None if v.holds else json.dumps(v.as_dict(), sort_keys=True))
    return r


def _network(S: FiniteInverseSemigroup):
    return require_stable(min_network(S))


def _quotient_by(S: FiniteInverseSemigroup, side: str, n: int) -> FiniteInverseSemigroup:
    return quotient(S, _network(S).get(side, n))[0]


def suite_theorem_rel(corpus: list[CorpusMember], n_max: int = REL_N_MAX, cap=None) -> VerdictReport:
    r = VerdictReport("rel")

    def idempotent_classes(Z, side, n, pred, cond, m):
        rho = _network(Z).get(side, n)
        for c in rho.idempotent_classes():
            Y = class_substructure(Z, tuple(c)).semigroup
            r.check_class(m, cond, Y, pred(Y), rho)

    def kernel_of(Z, n, pred, cond, m):
        alpha = _network(Z).alpha(n)
        Y = class_substructure(Z, alpha.kernel).semigroup
        r.check_class(m, cond, Y, pred(Y), alpha)

    for m in corpus:
        S = m.semigroup
        for n in range(1, n_max + 1):
            try:
                idempotent_classes(_quotient_by(S, "beta", n + 1), "alpha", n, is_semilattice,
                                   f"rel1_alpha_{n}_classes_semilattices", m)
                idempotent_classes(_quotient_by(S, "alpha", n + 1), "beta", n, is_group,
                                   f"rel1_beta_{n}_classes_groups", m)
                kernel_of(_quotient_by(S, "alpha", n + 2), n, is_clifford,
                          f"rel2_ker_alpha_{n}_clifford", m)
                idempotent_classes(_quotient_by(S, "beta", n + 2), "beta", n, is_e_unitary,
                                   f"rel2_beta_{n}_classes_e_unitary", m)
                kernel_of(_quotient_by(S, "beta", n + 3), n, is_e_reflexive,
                          f"rel3_ker_alpha_{n}_e_reflexive", m)
                idempotent_classes(_quotient_by(S, "alpha", n + 3), "beta", n, is_e_omega_clifford,
                                   f"rel3_beta_{n}_classes_e_omega_clifford", m)
            except ISGError as exc:
                r.error(m, f"rel_n{n}", exc)
    return r


def suite_theorem_main(corpus: list[CorpusMember], n_max: int = MAIN_N_MAX, cap=None) -> VerdictReport:
    r = VerdictReport("main")
    for m in corpus:
        S = m.semigroup
        for n in range(n_max + 1):
            try:
                Z = _quotient_by(S, "beta", 2 * n + 3)
                eta = _network(Z).beta(1)
                for c in eta.classes():
                    Y = class_substructure(Z, tuple(c)).semigroup
                    r.check_class(m, f"main1_eta_classes_beta_{2 * n}_over_e_unitary", Y,
                                  is_beta_n_over_e_unitary(Y, 2 * n), eta)
                Z = _quotient_by(S, "alpha", 2 * n + 4)
                eta = _network(Z).beta(1)
                for c in eta.classes():
                    Y = class_substructure(Z, tuple(c)).semigroup
                    r.check_class(m, f"main2_eta_classes_ker_alpha_{2 * n + 1}_clifford", Y,
                                  is_ker_alpha_n_clifford(Y, 2 * n + 1), eta)
                Y = e_closure(_quotient_by(S, "beta", 2 * n + 4)).semigroup
                r.check_class(m, f"main3_e_omega_beta_{2 * n + 1}_over_e_unitary", Y,
                              is_beta_n_over_e_unitary(Y, 2 * n + 1))
                Y = e_closure(_quotient_by(S, "alpha", 2 * n + 3)).semigroup
                r.check_class(m, f"main4_e_omega_ker_alpha_{2 * n}_clifford", Y,
                              is_ker_alpha_n_clifford(Y, 2 * n))
            except ISGError as exc:
                r.error(m, f"main_n{n}", exc)
    return r


def _inverse_substructures(S: FiniteInverseSemigroup, lattice: list[Congruence]) -> list[SubStructure]:
    """Idempotent classes of every congruence, E-omega and E-zeta, without repeats."""
    found: dict[tuple[int, ...], SubStructure] = {}
    for rho in lattice:
        for c in rho.idempotent_classes():
            key = tuple(c)
            if key not in found:
                found[key] = class_substructure(S, key)
    for Y in (e_closure(S), centralizer_of_idempotents(S)):
        found.setdefault(Y.members, Y)
    return [found[k] for k in sorted(found, key=lambda k: (len(k), k))]


def _principal_keys(S: FiniteInverseSemigroup, Y: SubStructure):
    """Group pairs of S by (principal congruence in Y or None, principal congruence in S).

    For R of size at most two, both (R|_Y)* and R* depend only on these keys,
    so checking every pair of keys covers every such R.
    """
    ps = principal_congruences(S)
    py = principal_congruences(Y.semigroup)
    eps_s, eps_y = equality(S), equality(Y.semigroup)
    idx = Y.reindex
    keys = {}
    for a in range(S.order):
        for b in range(S.order):
            ky = None
            if a in idx and b in idx:
                ky = eps_y if a == b else py[tuple(sorted((idx[a], idx[b])))]
            key = (ky, eps_s if a == b else ps[tuple(sorted((a, b)))])
            keys.setdefault(key, (a, b))
    return keys


def _check_generate(r: VerdictReport, m: CorpusMember, Y: SubStructure, R: list[tuple[int, int]]):
    S = m.semigroup
    idx = Y.reindex
    inner = [(idx[a], idx[b]) for a, b in R if a in idx and b in idx]
    lhs = closure(Y.semigroup, inner)
    rhs = restrict_congruence(closure(S, R), Y)
    r.check(m, "generated_restriction_inclusion", lhs <= rhs, None,
            [x for pair in R for x in pair] + list(Y.members))


def suite_lemmas(corpus: list[CorpusMember], cap=None, max_word: int = MAX_WORD, seed: int = 0) -> VerdictReport:
    """Closure of a restricted relation, restriction to an idempotent class, and the
    comparison of network words computed on a class with those on S."""
    r = VerdictReport("lemmas")
    rng = random.Random(seed)
    words = [""] + ["".join(w) for n in range(1, max_word + 1) for w in product("tk", repeat=n)]
    for m in corpus:
        lattice = _lattice(r, m, cap)
        if lattice is None:
            continue
        S = m.semigroup
        subs = _inverse_substructures(S, lattice)
        for Y in subs:
            keys = _principal_keys(S, Y)
            reps = [keys[k] for k in keys]
            _check_generate(r, m, Y, [])
            for p, q in combinations_with_replacement(reps, 2):
                _check_generate(r, m, Y, [p, q])
            pairs = [(a, b) for a in range(S.order) for b in range(S.order)]
            for _ in range(8):
                _check_generate(r, m, Y, rng.sample(pairs, min(len(pairs), rng.randint(3, 4))))

        L, F = greens(S, "L"), f_relation(S)
        for rho in lattice:
            for e in S.idempotent_set:
                Y = _idempotent_class(rho, e)
                T = Y.semigroup
                r.check(m, "restriction_L", L.restrict(Y.members) == greens(T, "L"), rho, [e])
                r.check(m, "restriction_F", F.restrict(Y.members) == f_relation(T), rho, [e])
                r.check(m, "restriction_rho_universal",
                        restrict_congruence(rho, Y) == universal(T), rho, [e])
            for word in words:
                for cut in range(len(word) + 1):
                    prefix, suffix = word[:cut], word[cut:]
                    base = _chain(rho, prefix)
                    full = _chain(rho, word)
                    done: set[tuple[int, ...]] = set()
                    for e in S.idempotent_set:
                        Y = _idempotent_class(base, e)
                        if Y.members in done:
                            continue
                        done.add(Y.members)
                        lhs = _chain(universal(Y.semigroup), suffix)
                        rhs = restrict_congruence(full, Y)
                        cond = "omega_inclusion" if cut == 0 else "omega_inclusion_mixed_prefix"
                        r.check(m, cond, lhs <= rhs, rho,
                                _first_difference(lhs.base, rhs.base) if not lhs <= rhs else (),
                                detail=None if lhs <= rhs else f"word={word} prefix={prefix} e={e}")
    return r


_CLASS_OF_ALIAS: dict[str, Callable[[FiniteInverseSemigroup], ClassVerdict]] = {
    "sigma": is_group,
    "eta": is_semilattice,
    "nu": is_clifford,
    "pi": is_e_unitary,
    "lambda": is_e_reflexive,
}


def suite_network(corpus: list[CorpusMember], cap=None) -> VerdictReport:
    """Network invariants: descent, stabilization, quotient classes, leastness of aliases."""
    r = VerdictReport("network")
    for m in corpus:
        S = m.semigroup
        try:
            rep = _network(S)
        except ISGError as exc:
            r.error(m, "stabilizes", exc)
            continue
        r.check(m, "no_findings", not rep.findings, detail="; ".join(rep.findings) or None)
        r.check(m, "alpha_1_is_sigma", rep.alpha(1) == sigma(S, cap), rep.alpha(1))
        for alias, (side, i) in ALIASES.items():
            rho = rep.get(side, i)
            Q, _ = quotient(S, rho)
            r.check_class(m, f"quotient_by_{alias}", Q, _CLASS_OF_ALIAS[alias](Q), rho)
        for n in range(3):
            Q = _quotient_by(S, "alpha", n + 2)
            r.check_class(m, f"quotient_by_alpha_{n + 2}_ker_alpha_{n}_clifford", Q,
                          is_ker_alpha_n_clifford(Q, n))
            Q = _quotient_by(S, "beta", n + 2)
            r.check_class(m, f"quotient_by_beta_{n + 2}_beta_{n}_over_e_unitary", Q,
                          is_beta_n_over_e_unitary(Q, n))
        lattice = try_enumerate(S, cap)
        if lattice is None:
            r.skipped.append(f"{m.name} (leastness checks)")
            continue
        for rho in lattice:
            Q, _ = quotient(S, rho)
            for alias, (side, i) in ALIASES.items():
                if _CLASS_OF_ALIAS[alias](Q).holds:
                    least = rep.get(side, i)
                    r.check(m, f"{alias}_is_least", least <= rho, rho,
                            _first_difference(least.base, rho.base))
    return r


_RUNNERS: dict[str, Callable[..., VerdictReport]] = {
    "formulas": suite_formulas,
    "least": suite_least_lemma,
    "quotient": suite_quotient_lemma,
    "min": suite_min_prop,
    "ab": suite_ab_prop,
    "kernel": suite_kernel_prop,
    "bundles": suite_bundles,
    "rel": suite_theorem_rel,
    "main": suite_theorem_main,
    "lemmas": suite_lemmas,
    "network": suite_network,
}


def run_suite(name: str, corpus: list[CorpusMember], cap: int | None = None) -> VerdictReport:
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    start = time.perf_counter()
    report = _RUNNERS[name](corpus, cap=cap)
    report.elapsed = time.perf_counter() - start
    return report


def run_suites(
    names: Iterable[str] = SUITES, corpus: list[CorpusMember] | None = None, cap: int | None = None
) -> list[VerdictReport]:
    if corpus is None:
        corpus = default_corpus(cap=cap)
    wanted = set(names)
    return [run_suite(n, corpus, cap) for n in SUITES if n in wanted]


def subcorpus(corpus: list[CorpusMember], names: Iterable[str]) -> list[CorpusMember]:
    """Members whose name, or catalog entry before the quotient slash, is listed."""
    wanted = set(names)
    return [m for m in corpus if m.name in wanted or m.name.split("/")[0] in wanted]


__all__ = [
    "BASE_CORPUS",
    "SUITES",
    "CorpusMember",
    "VerdictReport",
    "default_corpus",
    "run_suite",
    "run_suites",
    "subcorpus",
    "suite_ab_prop",
    "suite_bundles",
    "suite_formulas",
    "suite_kernel_prop",
    "suite_least_lemma",
    "suite_lemmas",
    "suite_min_prop",
    "suite_network",
    "suite_quotient_lemma",
    "suite_theorem_main",
    "suite_theorem_rel",
]
