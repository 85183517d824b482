"""The min network: alternate the least-trace and least-kernel operators from
the universal congruence."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .congruences import (
    Congruence,
    meet,
    push_congruence,
    quotient,
    rho_k,
    rho_t,
    sigma,
    universal,
)
from .errors import DepthExceeded, IndexOrder, InternalInconsistency
from .semigroup import FiniteInverseSemigroup

DEFAULT_MAX_DEPTH = 16

# alias -> (side, index)
ALIASES = {
    "sigma": ("alpha", 1),
    "eta": ("beta", 1),
    "nu": ("alpha", 2),
    "pi": ("beta", 2),
    "lambda": ("beta", 3),
}
GREEK = {"sigma": "σ", "eta": "η", "nu": "ν", "pi": "π", "lambda": "λ"}
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass
class MinNetworkReport:
    semigroup: FiniteInverseSemigroup
    alphas: list[Congruence]
    betas: list[Congruence]
    meets: list[Congruence]
    stabilization_index: int | None
    max_depth: int
    findings: list[str] = field(default_factory=list)

    def _get(self, seq: list[Congruence], i: int) -> Congruence:
        if i < 0:
            raise IndexError(i)
        if i < len(seq):
            return seq[i]
        if self.stabilization_index is not None:
            return seq[-1]
        raise DepthExceeded(self.max_depth, self)

    def alpha(self, i: int) -> Congruence:
        return self._get(self.alphas, i)

    def beta(self, i: int) -> Congruence:
        return self._get(self.betas, i)

    def get(self, side: str, i: int) -> Congruence:
        if side == "alpha":
            return self.alpha(i)
        if side == "beta":
            return self.beta(i)
        raise ValueError(f"side must be 'alpha' or 'beta', got {side!r}")

    @property
    def aliases(self) -> dict[str, Congruence]:
        return {name: self.get(side, i) for name, (side, i) in ALIASES.items()}

    @property
    def levels(self) -> int:
        """Number of levels worth displaying: 0..stabilization index (or all computed)."""
        if self.stabilization_index is None:
            return len(self.alphas)
        return self.stabilization_index + 1


def _stabilized(alphas: list[Congruence], betas: list[Congruence], m: int) -> bool:
    return alphas[m + 1] == alphas[m] and betas[m + 1] == betas[m]


@lru_cache(maxsize=8192)
def min_network(S: FiniteInverseSemigroup, max_depth: int = DEFAULT_MAX_DEPTH) -> MinNetworkReport:
    """alpha_0 = beta_0 = omega; alpha_n = (beta_{n-1})_t, beta_n = (alpha_{n-1})_k.

    The stabilization index is the least m >= 1 with alpha_{m+1} = alpha_m and
    beta_{m+1} = beta_m; levels are computed up to max_depth + 1 at most.
    Never raises DepthExceeded itself: an unstabilized report has index None.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    omega = universal(S)
    alphas, betas = [omega], [omega]
    index = None
    for n in range(1, max_depth + 2):
        alphas.append(rho_t(betas[n - 1]))
        betas.append(rho_k(alphas[n - 1]))
        if n >= 2 and _stabilized(alphas, betas, n - 1):
            index = n - 1
            break
    if alphas[1] != sigma(S):
        raise InternalInconsistency("alpha_1 differs from the least group congruence")
    meets = [meet(a, b) for a, b in zip(alphas, betas)]
    findings = []
    for n in range(len(alphas) - 1):
        if not alphas[n + 1] <= alphas[n]:
            findings.append(f"alpha_{n + 1} is not contained in alpha_{n}")
        if not betas[n + 1] <= betas[n]:
            findings.append(f"beta_{n + 1} is not contained in beta_{n}")
        if not alphas[n + 1] <= betas[n]:
            findings.append(f"alpha_{n + 1} is not contained in beta_{n}")
        if not betas[n + 1] <= alphas[n]:
            findings.append(f"beta_{n + 1} is not contained in alpha_{n}")
    return MinNetworkReport(S, alphas, betas, meets, index, max_depth, findings)


def require_stable(report: MinNetworkReport) -> MinNetworkReport:
    if report.stabilization_index is None:
        raise DepthExceeded(report.max_depth, report)
    return report


def network_on_quotient(
    S: FiniteInverseSemigroup,
    n: int,
    by: str,
    i: int,
    side: str,
    max_depth: int = DEFAULT_MAX_DEPTH,
    check: bool = True,
) -> tuple[Congruence, Congruence]:
    """Network member ``side``_i computed natively on S/(``by``_n), and pushed down from S.

    Raises NotAbove when ``by``_n is not contained in ``side``_i (the pushed
    congruence is then undefined) and InternalInconsistency on disagreement.
    """
    if i > n:
        raise IndexOrder(f"i={i} exceeds n={n}")
    report = require_stable(min_network(S, max(max_depth, n + 1)))
    rho = report.get(by, n)
    target = report.get(side, i)
    pushed = push_congruence(target, rho)
    Q, _ = quotient(S, rho)
    native = require_stable(min_network(Q, max(max_depth, i + 1))).get(side, i)
    if check and native != pushed:
        raise InternalInconsistency(
            f"({side}_{i}) on S/{by}_{n} differs from {side}_{i}/{by}_{n}"
        )
    return native, pushed


def _name(side: str, i: int) -> str:
    return ("α" if side == "alpha" else "β") + str(i).translate(_SUB)


def render_network_dot(report: MinNetworkReport) -> str:
    """DOT digraph of the network; equal congruences share one node."""
    levels = report.levels
    order: list[Congruence] = []
    labels: dict[Congruence, list[str]] = {}

    def add(c: Congruence, label: str) -> None:
        if c not in labels:
            order.append(c)
            labels[c] = []
        if label not in labels[c]:
            labels[c].append(label)

    add(report.alphas[0], "ω")
    for i in range(1, levels):
        for side in ("alpha", "beta"):
            name = _name(side, i)
            for alias, (s, k) in ALIASES.items():
                if s == side and k == i:
                    name += f" ({GREEK[alias]})"
            add(report.get(side, i), name)

    node_id = {c: f"n{k}" for k, c in enumerate(order)}
    lines = ["digraph min_network {", "  rankdir=TB;", '  node [shape=box, fontname="Helvetica"];']
    for c in order:
        text = " = ".join(labels[c])
        count = c.num_classes
        lines.append(f'  {node_id[c]} [label="{text}\\n{count} class{"es" if count != 1 else ""}"];')
    edges = []
    for n in range(levels - 1):
        for upper, lower in (
            (report.beta(n), report.alpha(n + 1)),
            (report.alpha(n), report.beta(n + 1)),
        ):
            if upper != lower and lower <= upper:
                e = (node_id[upper], node_id[lower])
                if e not in edges:
                    edges.append(e)
    for a, b in edges:
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
