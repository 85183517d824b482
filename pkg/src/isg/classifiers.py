"""Class-membership predicates for semigroups and the equivalence bundles for
congruences (conditions that must all agree for a given congruence)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .congruences import (
    Congruence,
    min_chain,
    mu,
    rho_k,
    rho_t,
    sigma,
    tau,
    try_enumerate,
)
from .errors import InternalInconsistency
from .network import min_network, require_stable
from .semigroup import (
    FiniteInverseSemigroup,
    SubStructure,
    centralizer_of_idempotents,
    e_closure,
    greens,
    substructure,
)

CLASS_NAMES = (
    "group",
    "semilattice",
    "clifford",
    "e_unitary",
    "e_reflexive",
    "e_omega_clifford",
    "ker_alpha_n_clifford",
    "beta_n_over_e_unitary",
)
BUNDLES = ("T", "K", "KT", "TK", "TKT", "KTK")


@dataclass(frozen=True)
class ClassVerdict:
    class_name: str
    holds: bool
    witness: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("a witness is present exactly when the verdict is false")

    def __bool__(self) -> bool:
        return self.holds


def _verdict(name: str, witness) -> ClassVerdict:
    return ClassVerdict(name, witness is None, None if witness is None else tuple(witness))


def _lift(verdict: ClassVerdict, Y: SubStructure, name: str | None = None) -> ClassVerdict:
    w = None if verdict.witness is None else tuple(Y.members[i] for i in verdict.witness)
    return ClassVerdict(name or verdict.class_name, verdict.holds, w)


@lru_cache(maxsize=65536)
def class_substructure(S: FiniteInverseSemigroup, members: tuple[int, ...]) -> SubStructure:
    return substructure(S, members)


def is_group(S: FiniteInverseSemigroup) -> ClassVerdict:
    E = S.idempotent_set
    single = len(E) == 1
    h_universal = greens(S, "H").is_universal()
    if single != h_universal:
        raise InternalInconsistency("single idempotent and universal H disagree")
    return _verdict("group", None if single else (E[0], E[1]))


def is_semilattice(S: FiniteInverseSemigroup) -> ClassVerdict:
    t = S.table
    for a in range(S.order):
        if t[a][a] != a:
            return _verdict("semilattice", (a,))
    for a in range(S.order):
        for b in range(a + 1, S.order):
            if t[a][b] != t[b][a]:
                return _verdict("semilattice", (a, b))
    return _verdict("semilattice", None)


def is_clifford(S: FiniteInverseSemigroup) -> ClassVerdict:
    t = S.table
    for a in range(S.order):
        for e in S.idempotent_set:
            if t[a][e] != t[e][a]:
                return _verdict("clifford", (a, e))
    return _verdict("clifford", None)


def is_e_unitary(S: FiniteInverseSemigroup) -> ClassVerdict:
    """xy = x implies y idempotent."""
    t = S.table
    for x in range(S.order):
        tx = t[x]
        for y in range(S.order):
            if tx[y] == x and t[y][y] != y:
                return _verdict("e_unitary", (x, y))
    return _verdict("e_unitary", None)


def _e_reflexive_scan(S: FiniteInverseSemigroup):
    t, mask = S.table, S.idempotent_mask
    for x in range(S.order):
        for y in range(S.order):
            for e in S.idempotent_set:
                if mask[t[t[x][e]][y]] and not mask[t[t[y][e]][x]]:
                    return (x, y, e)
    return None


def is_e_reflexive(S: FiniteInverseSemigroup) -> ClassVerdict:
    """xey idempotent implies yex idempotent; cross-checked through the
    least semilattice congruence (every class must be E-unitary)."""
    witness = _e_reflexive_scan(S)
    eta = require_stable(min_network(S)).beta(1)
    by_classes = all(is_e_unitary(class_substructure(S, tuple(c)).semigroup) for c in eta.classes())
    if by_classes != (witness is None):
        raise InternalInconsistency("the two E-reflexivity characterizations disagree")
    return _verdict("e_reflexive", witness)


def is_e_omega_clifford(S: FiniteInverseSemigroup) -> ClassVerdict:
    Y = e_closure(S)
    return _lift(is_clifford(Y.semigroup), Y, "e_omega_clifford")


def is_ker_alpha_n_clifford(S: FiniteInverseSemigroup, n: int) -> ClassVerdict:
    alpha = require_stable(min_network(S, max(16, n))).alpha(n)
    Y = class_substructure(S, alpha.kernel)
    return _lift(is_clifford(Y.semigroup), Y, f"ker_alpha_{n}_clifford")


def is_beta_n_over_e_unitary(S: FiniteInverseSemigroup, n: int) -> ClassVerdict:
    beta = require_stable(min_network(S, max(16, n))).beta(n)
    for c in beta.idempotent_classes():
        Y = class_substructure(S, tuple(c))
        v = is_e_unitary(Y.semigroup)
        if not v:
            return _lift(v, Y, f"beta_{n}_over_e_unitary")
    return ClassVerdict(f"beta_{n}_over_e_unitary", True)


def classify(S: FiniteInverseSemigroup, class_name: str) -> ClassVerdict:
    """Dispatch by name; parametrized classes are written ``name:n``."""
    base, _, arg = class_name.partition(":")
    simple: dict[str, Callable[[FiniteInverseSemigroup], ClassVerdict]] = {
        "group": is_group,
        "semilattice": is_semilattice,
        "clifford": is_clifford,
        "e_unitary": is_e_unitary,
        "e_reflexive": is_e_reflexive,
        "e_omega_clifford": is_e_omega_clifford,
    }
    if base in simple and not arg:
        return simple[base](S)
    if base in ("ker_alpha_n_clifford", "beta_n_over_e_unitary") and arg.isdigit():
        fn = is_ker_alpha_n_clifford if base.startswith("ker") else is_beta_n_over_e_unitary
        return fn(S, int(arg))
    raise ValueError(f"unknown class {class_name!r}")


# -- equivalence bundles -------------------------------------------------------------


@dataclass
class EquivalenceBundleVerdict:
    """``holds`` is the theorem under test: unanimity, or for KTK the implication
    from its premise to both conclusions. Skipped conditions are None."""

    bundle: str
    condition_ids: list[str]
    condition_results: list[bool | None]
    unanimous: bool
    holds: bool
    skipped: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, bool | None]:
        return dict(zip(self.condition_ids, self.condition_results))


def _idempotent_class_structures(rho: Congruence) -> list[SubStructure]:
    return [class_substructure(rho.parent, tuple(c)) for c in rho.idempotent_classes()]


def _implication_x2(rho: Congruence, conclusion: Callable[[int], bool]) -> bool:
    t = rho.parent.table
    return all(conclusion(x) for x in range(rho.parent.order) if rho.related(t[x][x], x))


def _bundle_conditions(S: FiniteInverseSemigroup, rho: Congruence, bundle: str, oracle_ok: bool, cap):
    """Ordered (id, thunk) pairs; thunks needing mu or tau are None when capped."""
    t = S.table
    E = S.idempotent_set
    mask = S.idempotent_mask
    n = S.order

    def classes_all(pred) -> bool:
        return all(pred(Y.semigroup) for Y in _idempotent_class_structures(rho))

    def kernel_sub() -> FiniteInverseSemigroup:
        return class_substructure(S, rho.kernel).semigroup

    if bundle == "T":
        return [
            ("rho_t_is_equality", lambda: rho_t(rho).is_equality()),
            ("contained_in_mu", (lambda: rho <= mu(S, cap)) if oracle_ok else None),
            ("trace_is_equality", lambda: rho.trace.is_equality()),
            (
                "idempotent_separating",
                lambda: all(e == f for e in E for f in E if rho.related(e, f)),
            ),
            ("idempotent_classes_groups", lambda: classes_all(lambda Y: is_group(Y).holds)),
            ("contained_in_H", lambda: rho.base <= greens(S, "H")),
        ]
    if bundle == "K":
        return [
            ("rho_k_is_equality", lambda: rho_k(rho).is_equality()),
            ("contained_in_tau", (lambda: rho <= tau(S, cap)) if oracle_ok else None),
            ("kernel_is_E", lambda: set(rho.kernel) == set(E)),
            (
                "idempotent_pure",
                lambda: all(mask[a] for a in range(n) for e in E if rho.related(a, e)),
            ),
            ("kernel_is_semilattice", lambda: is_semilattice(kernel_sub()).holds),
            ("idempotent_classes_semilattices", lambda: classes_all(lambda Y: is_semilattice(Y).holds)),
            ("idempotent_classes_bands", lambda: classes_all(lambda Y: all(Y.idempotent_mask))),
            ("square_implies_idempotent", lambda: _implication_x2(rho, lambda x: mask[x])),
        ]
    if bundle == "KT":
        return [
            ("rho_kt_is_equality", lambda: min_chain(rho, "kt").is_equality()),
            ("rho_k_contained_in_mu", (lambda: rho_k(rho) <= mu(S, cap)) if oracle_ok else None),
            (
                "kernel_in_centralizer",
                lambda: set(rho.kernel) <= set(centralizer_of_idempotents(S).members),
            ),
            ("kernel_is_clifford", lambda: is_clifford(kernel_sub()).holds),
            ("idempotent_classes_clifford", lambda: classes_all(lambda Y: is_clifford(Y).holds)),
            (
                "square_implies_central",
                lambda: _implication_x2(rho, lambda x: all(t[x][e] == t[e][x] for e in E)),
            ),
        ]
    if bundle == "TK":
        return [
            ("rho_tk_is_equality", lambda: min_chain(rho, "tk").is_equality()),
            ("idempotent_classes_e_unitary", lambda: classes_all(lambda Y: is_e_unitary(Y).holds)),
            (
                "left_identity_implies_idempotent",
                lambda: all(
                    mask[x]
                    for x in range(n)
                    for y in range(n)
                    if t[x][y] == y and rho.related(x, y)
                ),
            ),
        ]
    if bundle == "TKT":
        return [
            ("rho_tkt_is_equality", lambda: min_chain(rho, "tkt").is_equality()),
            (
                "idempotent_classes_e_omega_clifford",
                lambda: classes_all(lambda Y: is_e_omega_clifford(Y).holds),
            ),
            (
                "left_identity_implies_central",
                lambda: all(
                    t[x][e] == t[e][x]
                    for x in range(n)
                    for y in range(n)
                    if t[x][y] == y and rho.related(x, y)
                    for e in E
                    if rho.related(y, e)
                ),
            ),
        ]
    if bundle == "KTK":
        rk = rho_k(rho)
        return [
            ("rho_ktk_is_equality", lambda: min_chain(rho, "ktk").is_equality()),
            (
                "rho_k_idempotent_classes_e_unitary",
                lambda: all(is_e_unitary(Y.semigroup).holds for Y in _idempotent_class_structures(rk)),
            ),
            ("kernel_is_e_reflexive", lambda: is_e_reflexive(kernel_sub()).holds),
        ]
    raise ValueError(f"unknown bundle {bundle!r}; expected one of {', '.join(BUNDLES)}")


def congruence_bundle(
    S: FiniteInverseSemigroup, rho: Congruence, bundle: str, cap: int | None = None
) -> EquivalenceBundleVerdict:
    """Evaluate every condition of the bundle (no short-circuit)."""
    needs_oracle = bundle in ("T", "K", "KT")
    oracle_ok = not needs_oracle or try_enumerate(S, cap) is not None
    conds = _bundle_conditions(S, rho, bundle, oracle_ok, cap)
    ids, results, skipped = [], [], []
    for cid, thunk in conds:
        ids.append(cid)
        if thunk is None:
            results.append(None)
            skipped.append(cid)
        else:
            results.append(bool(thunk()))
    evaluated = [r for r in results if r is not None]
    unanimous = len(set(evaluated)) <= 1
    if bundle == "KTK":
        premise, *conclusions = results
        holds = (not premise) or all(conclusions)
    else:
        holds = unanimous
    return EquivalenceBundleVerdict(bundle, ids, results, unanimous, holds, skipped)


def kernel_of_class_sigma(S: FiniteInverseSemigroup, rho: Congruence, e: int) -> list[int]:
    """Kernel of the least group congruence on the class of e, in S's indices.

    Raises InternalInconsistency unless it equals the class of e under rho_t.
    """
    if not S.idempotent_mask[e]:
        raise ValueError(f"{e} is not an idempotent")
    Y = class_substructure(S, tuple(rho.class_of(e)))
    ker = sorted(Y.members[i] for i in sigma(Y.semigroup).kernel)
    expected = rho_t(rho).class_of(e)
    if ker != expected:
        raise InternalInconsistency(
            f"kernel of sigma on the class of {e} is {ker}, but its rho_t-class is {expected}"
        )
    return ker


def witness_refutes(S: FiniteInverseSemigroup, class_name: str, witness: tuple[int, ...]) -> bool:
    """Re-check a counterexample against the raw defining condition."""
    t, mask = S.table, S.idempotent_mask
    base = class_name.split(":")[0]
    try:
        if base == "group":
            e, f = witness
            return mask[e] and mask[f] and e != f
        if base == "semilattice":
            if len(witness) == 1:
                return not mask[witness[0]]
            a, b = witness
            return t[a][b] != t[b][a]
        if base in ("clifford", "e_omega_clifford") or base.startswith("ker_alpha"):
            a, e = witness
            return mask[e] and t[a][e] != t[e][a]
        if base == "e_unitary" or base.startswith("beta_"):
            x, y = witness
            return t[x][y] == x and not mask[y]
        if base == "e_reflexive":
            x, y, e = witness
            return mask[e] and mask[t[t[x][e]][y]] and not mask[t[t[y][e]][x]]
    except (ValueError, IndexError, TypeError):
        return False
    raise ValueError(f"unknown class {class_name!r}")
