"""Command-line entry point: ``sumsets <subcommand> ...``.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage
error, 3 budget or limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Optional, Sequence, TextIO

from . import constructions as C
from .admissibility import abelian_filters, check_admissible, parameter_scan, sumner_butson_filter
from .groups import FiniteGroup, GroupError, Subset, center, parse_group
from .regularity import certificate, classify
from .search import (
    DEDUP_FLAGS,
    MODES,
    SUITES,
    BudgetExceeded,
    SearchError,
    SearchQuery,
    default_threads,
    exhaustive_search,
    property_suite,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def parse_set(G: FiniteGroup, text: str) -> Subset:
    """Comma-separated labels (x2t) or indices (#5), never a mix of the two."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    kinds = {t.startswith("#") for t in tokens}
    if len(kinds) > 1:
        raise UsageError("element list mixes labels and #indices")
    idx = [G.parse_element(t) for t in tokens]
    if len(set(idx)) != len(idx):
        raise UsageError("element list repeats an element")
    return Subset.from_indices(G, idx)


def _group(spec: str) -> FiniteGroup:
    try:
        return parse_group(spec)
    except GroupError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- rendering


def _table(rows: list[tuple[str, ...]], out: TextIO) -> None:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _render_certificate(cert: dict[str, Any], G: FiniteGroup, out: TextIO) -> None:
    out.write(f"group  {cert['group_spec']} (order {G.order})\n")
    out.write(f"set    {{{', '.join(cert['set'])}}}\n")
    p = cert["params"]
    if p is None:
        out.write("params none (not a partial sum set)\n")
    else:
        quad = (p["v"], p["k"], p.get("lambda", p["mu"]), p["mu"])
        kind = "sum set" if "lambda" not in p else "partial sum set"
        out.write(f"params {quad} {kind}, n = {p['n']}\n")
    flags = cert["classification"]
    out.write("flags  " + ", ".join(k for k, v in sorted(flags.items()) if v is True) + "\n")
    rows = [("element", "in S", "products", "quotients")]
    members = set(cert["set"])
    for g, lab in enumerate(G.labels):
        rows.append(
            (lab, "*" if lab in members else "", str(cert["product_counts"][g]), str(cert["quotient_counts"][g]))
        )
    _table(rows, out)


# ---------------------------------------------------------------- subcommands


def cmd_group(a: argparse.Namespace, out: TextIO) -> int:
    G = _group(a.group)
    if a.json:
        out.write(dumps(G.to_json()) + "\n")
        return EXIT_OK
    out.write(f"{G.spec}: order {G.order}, {'abelian' if G.is_abelian else 'nonabelian'}\n")
    out.write(f"center {{{', '.join(center(G).label_list())}}}\n")
    rows = [("index", "label", "order", "inverse")]
    for g in range(G.order):
        rows.append((str(g), G.labels[g], str(G.element_order(g)), G.labels[G.inv[g]]))
    _table(rows, out)
    return EXIT_OK


def cmd_verify(a: argparse.Namespace, out: TextIO) -> int:
    G = _group(a.group)
    S = parse_set(G, a.set)
    cl = classify(S)
    cert = certificate(S, a.group)
    if a.json:
        out.write(dumps(cert) + "\n")
    else:
        _render_certificate(cert, G, out)
    ok = cl.is_sum_set or (a.pss and cl.is_partial_sum_set)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _need(a: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(a, n) is None]
    if missing:
        raise UsageError(f"construct {a.tag} needs {' '.join(missing)}")


def _construct(a: argparse.Namespace) -> C.ConstructionResult:
    tag = a.tag
    pick = a.variant
    if tag == "lift2":
        _need(a, "group", "set")
        G = _group(a.group)
        lift = C.lift2(parse_set(G, a.set))
        return lift.sum_sets[pick]
    if tag == "project2":
        _need(a, "group", "set", "central")
        G = _group(a.group)
        z = G.parse_element(a.central)
        return C.project2(parse_set(G, a.set), Subset.from_indices(G, (0, z)))
    if tag == "dihedral-t1":
        _need(a, "n")
        return C.dihedral_type1(a.n)[pick]
    if tag == "dihedral-t2":
        _need(a, "m")
        return C.dihedral_type2(a.m)
    if tag == "dstar":
        _need(a, "n")
        return C.dstar_sum_set(a.n)[pick]
    if tag == "frob-cosets":
        _need(a, "group", "t")
        G = _group(a.group)
        picks = None
        if a.random_picks:
            picks = C.random_picks(G, a.t, random.Random(a.seed))
        return C.frobenius_coset_pss(G, a.t, a.include_h, picks)
    if tag == "aff-x-c2":
        _need(a, "q")
        return C.aff_times_c2_sum_set(a.q)
    if tag == "frob-subgroup":
        _need(a, "q", "d")
        if a.per_orbit != 2:
            return C.frobenius_orbit_pss(a.q, a.d, a.per_orbit)
        return C.frobenius_subgroup_sum_set(a.q, a.d)
    if tag == "paley":
        _need(a, "q")
        return C.paley_skew_pss(a.q)
    raise UsageError(f"unknown construction {tag!r}")


def cmd_construct(a: argparse.Namespace, out: TextIO) -> int:
    try:
        res = _construct(a)
    except C.ConstructionError as exc:
        # a failed certificate is a negative verdict, anything else is bad input
        if "does not verify" in str(exc):
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_NEGATIVE
        raise UsageError(str(exc)) from None
    if a.json:
        out.write(dumps(res.to_json()) + "\n")
    else:
        out.write(f"construction {res.theorem_tag}\n")
        out.write(f"choices {dumps(res.choices)}\n")
        _render_certificate(certificate(res.set), res.group, out)
    return EXIT_OK


def cmd_admissible(a: argparse.Namespace, out: TextIO) -> int:
    if a.k is not None or a.mu is not None:
        if a.k is None or a.mu is None:
            raise UsageError("--k and --mu go together")
        verdict = check_admissible(a.v, a.k, a.mu, normalized=not a.allow_large_k)
        if a.abelian:
            verdict.rejections.extend(abelian_filters(a.v, a.k, a.mu))
        verdict.rejections.extend(sumner_butson_filter(a.v, a.k, a.mu))
        verdicts = [verdict]
    else:
        verdicts = parameter_scan(a.v, abelian=a.abelian)
    for verdict in verdicts:
        if a.json:
            out.write(dumps(verdict.to_json()) + "\n")
        else:
            why = "; ".join(f"{r.rule} [{r.citation}]" for r in verdict.rejections)
            state = "admissible" if verdict.admissible else "rejected"
            out.write(f"({verdict.v},{verdict.k},{verdict.mu}) n={verdict.n} {state}{': ' + why if why else ''}\n")
    if a.k is not None:
        return EXIT_OK if verdicts[0].admissible else EXIT_NEGATIVE
    return EXIT_OK


def _k_range(text: Optional[str]) -> Optional[tuple[int, int]]:
    if text is None:
        return None
    try:
        if "-" in text:
            lo, hi = text.split("-", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise UsageError(f"--k expects K or LO-HI, got {text!r}") from None


def cmd_search(a: argparse.Namespace, out: TextIO) -> int:
    _group(a.group)
    dedup = frozenset(x for x in (a.dedup or "").split(",") if x)
    try:
        q = SearchQuery(
            a.group,
            _k_range(a.k),
            mode=a.mode,
            dedup=dedup,
            max_results=a.max_results,
            budget_seconds=a.budget_seconds,
            include_trivial=a.include_trivial,
            threads=a.threads or default_threads(),
        )
        rep = exhaustive_search(q)
    except SearchError as exc:
        raise UsageError(str(exc)) from None
    if a.jsonl:
        with open(a.jsonl, "w") as fh:
            for r in rep.results:
                fh.write(dumps(r.to_json()) + "\n")
    if a.json:
        out.write(dumps(rep.to_json(with_results=not a.jsonl, with_stats=a.timing)) + "\n")
    else:
        state = "exhaustive" if rep.exhaustive else f"partial ({rep.stop_reason})"
        out.write(f"{a.group}: {len(rep.results)} sets, {state}, {rep.nodes} nodes, {rep.trivial_count} trivial\n")
        for key, c in sorted(rep.counts.items()):
            out.write(f"  {key}: {c}\n")
        for r in rep.results:
            out.write(f"  {{{', '.join(r.subset.label_list())}}} {r.params}\n")
        if a.timing:
            out.write(f"elapsed {rep.elapsed:.3f}s\n")
    if not rep.exhaustive and rep.stop_reason == "budget":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_suite(a: argparse.Namespace, out: TextIO) -> int:
    for spec in a.scope:
        if a.name != "shds-pss":
            _group(spec)
    try:
        rep = property_suite(
            a.name, a.scope, seed=a.seed, budget_seconds=a.budget_seconds, threads=a.threads or default_threads()
        )
    except SearchError as exc:
        raise UsageError(str(exc)) from None
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    if a.json:
        out.write(dumps(rep.to_json()) + "\n")
    else:
        out.write(f"{rep.name}: {'PASS' if rep.passed else 'FAIL'} ({rep.checked} checked)\n")
        for f in rep.failures:
            out.write(f"  {dumps(f)}\n")
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sumsets", description="Sum sets and partial sum sets in finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized choices (default 0)")

    sp = sub.add_parser("group", help="build a group and print its table")
    sp.add_argument("--group", required=True)
    common(sp)
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("verify", help="classify a subset and print its certificate")
    sp.add_argument("--group", required=True)
    sp.add_argument("--set", required=True, help="comma-separated labels or #indices")
    sp.add_argument("--pss", action="store_true", help="accept partial sum sets as a positive verdict")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="run one of the constructions")
    sp.add_argument("tag", choices=C.TAGS)
    sp.add_argument("--group")
    sp.add_argument("--set")
    sp.add_argument("--central", help="label of the central involution (project2)")
    for name in ("n", "m", "q", "t", "d"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--include-h", action="store_true")
    sp.add_argument("--random-picks", action="store_true", help="draw coset picks with --seed")
    sp.add_argument("--per-orbit", type=int, default=2)
    sp.add_argument("--variant", type=int, choices=(0, 1), default=0, help="which completion to report")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("admissible", help="parameter triples allowed by the necessary conditions")
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--mu", type=int)
    sp.add_argument("--abelian", action="store_true")
    sp.add_argument("--allow-large-k", action="store_true", help="do not require k <= v/2")
    common(sp)
    sp.set_defaults(func=cmd_admissible)

    sp = sub.add_parser("search", help="exhaustive search in a small group")
    sp.add_argument("--group", required=True)
    sp.add_argument("--k", help="K or LO-HI (default 1-v/2)")
    sp.add_argument("--mode", choices=MODES, default="sum_set")
    sp.add_argument("--dedup", help=f"comma list from {','.join(DEDUP_FLAGS)}")
    sp.add_argument("--budget-seconds", type=float)
    sp.add_argument("--max-results", type=int)
    sp.add_argument("--include-trivial", action="store_true")
    sp.add_argument("--jsonl", metavar="PATH", help="write one certificate per line to PATH")
    sp.add_argument("--threads", type=int, help="worker processes (default $SUMSETS_THREADS or 1)")
    sp.add_argument("--timing", action="store_true", help="report elapsed time and nodes visited")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("suite", help="run an empirical property suite")
    sp.add_argument("name", choices=SUITES)
    sp.add_argument("--scope", nargs="+", required=True, help="group specs (q values for shds-pss)")
    sp.add_argument("--budget-seconds", type=float)
    sp.add_argument("--threads", type=int)
    common(sp)
    sp.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.func(a, out)
    except (UsageError, GroupError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def run(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
