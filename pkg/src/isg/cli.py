"""Command-line driver: ``isg <command> INPUT ...``.

INPUT is a path to a .cay or .json table, or ``builtin:NAME`` for a catalog entry.
Exit codes: 0 success, 1 property false or suite failure, 2 invalid algebra,
3 parse error, 4 depth exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import catalog, verifier
from .classifiers import CLASS_NAMES, classify
from .congruences import (
    Congruence,
    default_cap,
    enumerate_congruences,
    mu,
    sigma,
    tau,
    try_enumerate,
)
from .errors import DepthExceeded, EnumerationCapExceeded, InvalidAlgebra, ISGError, ParseError
from .network import ALIASES, DEFAULT_MAX_DEPTH, GREEK, min_network, render_network_dot, require_stable
from .semigroup import (
    FiniteInverseSemigroup,
    centralizer_of_idempotents,
    e_closure,
    greens,
    natural_order,
)

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_PARSE, EXIT_DEPTH, EXIT_USAGE = 0, 1, 2, 3, 4, 64
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(source: str) -> FiniteInverseSemigroup:
    try:
        return catalog.load(source)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror or exc}") from None


def _names(S: FiniteInverseSemigroup, xs) -> str:
    return " ".join(S.names[x] for x in xs)


def _describe(c: Congruence) -> str:
    if c.is_equality():
        return "ε"
    if c.is_universal():
        return "ω"
    return f"{c.num_classes} classes"


def _network_labels(S: FiniteInverseSemigroup, max_depth: int) -> dict[Congruence, list[str]]:
    report = min_network(S, max_depth)
    labels: dict[Congruence, list[str]] = {}
    greek_of = {v: k for k, v in ALIASES.items()}
    for i in range(report.levels):
        for side, letter in (("alpha", "α"), ("beta", "β")):
            c = report.get(side, i)
            name = letter + str(i).translate(_SUB)
            alias = greek_of.get((side, i))
            if alias:
                name += f" ({GREEK[alias]})"
            labels.setdefault(c, [])
            if name not in labels[c]:
                labels[c].append(name)
    return labels


# -- commands ------------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    S = _load(args.input)
    if args.format == "json":
        out.write(json.dumps({
            "order": S.order,
            "idempotents": list(S.idempotent_set),
            "inverse": list(S.inv),
            "names": list(S.names),
        }, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"order: {S.order}\n")
    out.write(f"idempotents: {len(S.idempotent_set)} ({_names(S, S.idempotent_set)})\n")
    out.write("inverses: " + ", ".join(f"{S.names[a]}->{S.names[S.inv[a]]}" for a in range(S.order)) + "\n")
    return EXIT_OK


def _hasse_edges(S: FiniteInverseSemigroup) -> list[tuple[int, int]]:
    n = S.order
    below = [[natural_order(S, a, b) and a != b for b in range(n)] for a in range(n)]
    return [
        (a, b)
        for a in range(n)
        for b in range(n)
        if below[a][b] and not any(below[a][c] and below[c][b] for c in range(n))
    ]


def cmd_analyze(args, out) -> int:
    S = _load(args.input)
    cap = args.cap
    report = require_stable(min_network(S, args.max_depth))
    lattice = try_enumerate(S, cap)
    counts = {
        "sigma": sigma(S, cap),
        "eta": report.beta(1),
        "mu": mu(S, cap),
    }
    tau_c = None if lattice is None else tau(S, cap)
    D = greens(S, "L").join(greens(S, "R"))
    data = {
        "order": S.order,
        "idempotents": list(S.idempotent_set),
        "greens": {k: greens(S, k).num_classes for k in "LRH"} | {"D": D.num_classes},
        "natural_order_covers": [list(e) for e in _hasse_edges(S)],
        "e_omega": list(e_closure(S).members),
        "e_zeta": list(centralizer_of_idempotents(S).members),
        "congruences": {k: list(v.rep) for k, v in counts.items()},
        "tau": None if tau_c is None else list(tau_c.rep),
    }
    if args.format == "json":
        out.write(json.dumps(data, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"order: {S.order}\n")
    out.write(f"idempotents ({len(S.idempotent_set)}): {_names(S, S.idempotent_set)}\n")
    g = data["greens"]
    out.write(f"Green's classes: L={g['L']} R={g['R']} H={g['H']} D={g['D']}\n")
    edges = ", ".join(f"{S.names[a]} < {S.names[b]}" for a, b in _hasse_edges(S))
    out.write(f"natural order covers: {edges or '(none)'}\n")
    out.write(f"E-omega: {_names(S, data['e_omega'])}\n")
    out.write(f"E-zeta: {_names(S, data['e_zeta'])}\n")
    for key, sym in (("sigma", "σ"), ("eta", "η"), ("mu", "μ")):
        out.write(f"{sym}: {_describe(counts[key])}\n")
    if tau_c is None:
        out.write(f"τ: unavailable (congruence enumeration exceeded cap {cap or default_cap()})\n")
    else:
        out.write(f"τ: {_describe(tau_c)}\n")
    return EXIT_OK


def cmd_min_network(args, out) -> int:
    S = _load(args.input)
    report = min_network(S, args.max_depth)
    if report.stabilization_index is None:
        raise DepthExceeded(args.max_depth, report)
    if args.format == "dot":
        out.write(render_network_dot(report))
        return EXIT_OK
    levels = report.levels
    if args.format == "json":
        out.write(json.dumps({
            "order": S.order,
            "stabilization_index": report.stabilization_index,
            "alphas": [list(report.alpha(i).rep) for i in range(levels)],
            "betas": [list(report.beta(i).rep) for i in range(levels)],
            "meets": [list(report.meets[i].rep) for i in range(levels)],
            "aliases": {k: list(v.rep) for k, v in report.aliases.items()},
        }, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"{'n':>3}  {'α_n':>6}  {'β_n':>6}  {'α_n∩β_n':>8}\n")
    for i in range(levels):
        out.write(f"{i:>3}  {report.alpha(i).num_classes:>6}  {report.beta(i).num_classes:>6}"
                  f"  {report.meets[i].num_classes:>8}\n")
    out.write("aliases: " + ", ".join(
        f"{GREEK[k]}={'α' if s == 'alpha' else 'β'}{str(i).translate(_SUB)} ({_describe(report.get(s, i))})"
        for k, (s, i) in ALIASES.items()) + "\n")
    out.write(f"stabilization index: {report.stabilization_index}\n")
    for c, names in _network_labels(S, args.max_depth).items():
        if len(names) > 1:
            out.write("merge: " + " = ".join(names) + f" ({_describe(c)})\n")
    for f in report.findings:
        out.write(f"finding: {f}\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    S = _load(args.input)
    name = args.class_name
    if name.startswith("is_"):
        name = name[3:]
    try:
        verdict = classify(S, name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        out.write(json.dumps({
            "class": name,
            "holds": verdict.holds,
            "witness": None if verdict.witness is None else list(verdict.witness),
        }, sort_keys=True) + "\n")
    elif verdict.holds:
        out.write(f"{name}: holds\n")
    else:
        out.write(f"{name}: fails; witness {_names(S, verdict.witness)}\n")
    return EXIT_OK if verdict.holds else EXIT_FALSE


def _covers(lattice: list[Congruence]) -> list[tuple[int, int]]:
    """(upper, lower) index pairs of the covering relation."""
    n = len(lattice)
    below = [[i != j and lattice[j] <= lattice[i] for j in range(n)] for i in range(n)]
    return [
        (i, j)
        for i in range(n)
        for j in range(n)
        if below[i][j] and not any(below[i][k] and below[k][j] for k in range(n))
    ]


def cmd_congruences(args, out, err) -> int:
    S = _load(args.input)
    cap = args.cap if args.cap is not None else default_cap()
    complete = True
    try:
        lattice = enumerate_congruences(S, cap)
    except EnumerationCapExceeded as exc:
        lattice, complete = list(exc.partial), False
        err.write(f"warning: enumeration stopped at cap {cap}; listing is partial\n")
    try:
        labels = _network_labels(S, args.max_depth)
    except ISGError:
        labels = {}
    if args.format == "json":
        out.write(json.dumps({
            "complete": complete,
            "congruences": [
                {"rep": list(c.rep), "classes": c.num_classes, "labels": labels.get(c, [])}
                for c in lattice
            ],
            "covers": [list(e) for e in _covers(lattice)] if complete else [],
        }, sort_keys=True) + "\n")
        return EXIT_OK
    if args.format == "dot":
        out.write("digraph congruences {\n  rankdir=TB;\n  node [shape=box];\n")
        for i, c in enumerate(lattice):
            tag = " = ".join(labels.get(c, []))
            text = f"{_describe(c)}" + (f"\\n{tag}" if tag else "")
            style = ", style=bold" if tag else ""
            out.write(f'  c{i} [label="{text}"{style}];\n')
        for i, j in _covers(lattice):
            out.write(f"  c{i} -> c{j};\n")
        out.write("}\n")
        return EXIT_OK
    out.write(f"{len(lattice)} congruences{'' if complete else ' (partial)'}\n")
    for i, c in enumerate(lattice):
        blocks = " | ".join(_names(S, b) for b in c.classes())
        tag = " = ".join(labels.get(c, []))
        out.write(f"[{i}] {c.num_classes} class{'' if c.num_classes == 1 else 'es'}: {blocks}" + (f"   <- {tag}" if tag else "") + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    corpus = verifier.default_corpus(cap=args.cap)
    if args.corpus:
        unknown = [n for n in args.corpus if n not in catalog.CATALOG]
        if unknown:
            raise UsageError(f"unknown corpus member(s): {', '.join(unknown)}")
        corpus = verifier.subcorpus(corpus, args.corpus)
    suites = args.suite or list(verifier.SUITES)
    reports = verifier.run_suites(suites, corpus, args.cap)
    for r in reports:
        out.write(r.to_json(timings=args.timings) + "\n")
    return EXIT_OK if all(r.status != "fail" for r in reports) else EXIT_FALSE


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        for name, entry in catalog.CATALOG.items():
            out.write(f"{name:<10} {entry.description}\n")
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog emit needs an entry name")
    try:
        S = catalog.build(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    data = catalog.emit(S, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        out.write(data.decode("utf-8"))
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isg", description="Finite inverse semigroups: congruences and min networks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("text", "json")):
        sp.add_argument("input", help="path to a .cay/.json table or builtin:NAME")
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
        sp.add_argument("--cap", type=int, default=None, help="congruence enumeration cap")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    common(sub.add_parser("validate", help="check the inverse semigroup axioms"))
    common(sub.add_parser("analyze", help="idempotents, Green's relations, standard congruences"))
    common(sub.add_parser("min-network", help="compute the min network"), ("text", "json", "dot"))
    sp = sub.add_parser("check", help="test membership in a class")
    common(sp)
    sp.add_argument("class_name", help=f"one of {', '.join(CLASS_NAMES)} (parametrized as name:n)")
    common(sub.add_parser("congruences", help="enumerate the congruence lattice"), ("text", "json", "dot"))

    sp = sub.add_parser("verify", help="run theorem suites, JSON lines on stdout")
    sp.add_argument("--suite", action="append", choices=verifier.SUITES)
    sp.add_argument("--corpus", action="append", help="restrict to a catalog entry and its quotients")
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--timings", action="store_true", help="include elapsed seconds")
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("catalog", help="list or emit built-in semigroups")
    sp.add_argument("action", choices=("list", "emit"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--format", choices=("cay", "json"), default="cay")
    sp.add_argument("-o", "--output")
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "max_depth", 1) < 1:
        err.write("isg: error: --max-depth must be at least 1\n")
        return EXIT_USAGE

    target = out
    fh = None
    if args.command != "catalog" and getattr(args, "output", None):
        fh = open(args.output, "w", encoding="utf-8")
        target = fh
    try:
        if args.command == "validate":
            return cmd_validate(args, target)
        if args.command == "analyze":
            return cmd_analyze(args, target)
        if args.command == "min-network":
            return cmd_min_network(args, target)
        if args.command == "check":
            return cmd_check(args, target)
        if args.command == "congruences":
            return cmd_congruences(args, target, err)
        if args.command == "verify":
            return cmd_verify(args, target)
        return cmd_catalog(args, target)
    except UsageError as exc:
        err.write(f"isg: error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except InvalidAlgebra as exc:
        witness = " ".join(map(str, exc.witness))
        target.write(f"invalid: {exc}" + (f"; witness {witness}" if witness else "") + "\n")
        return EXIT_INVALID
    except DepthExceeded as exc:
        err.write(f"depth exceeded: {exc}\n")
        return EXIT_DEPTH
    finally:
        if fh is not None:
            fh.close()


if __name__ == "__main__":
    sys.exit(main())
