"""Exhaustive search for sum sets, partial sum sets and maximal skew sets.

The scan walks k-subsets in increasing index order and keeps the product
counts of the current prefix up to date as elements are pushed and popped.
Counts only grow as a prefix is extended, so a prefix whose nonidentity count
already exceeds the largest admissible mu can be abandoned.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from .admissibility import full_coset_analysis
from .group_ring import (
    from_subset,
    sum_set_even_power_closed_form,
    sum_set_odd_power_closed_form,
)
from .groups import FiniteGroup, Subset, all_subsets, normal_subgroups, parse_group
from .regularity import (
    PssParams,
    central_involutions,
    classify,
    is_skew,
    is_trivial,
)

MODES = ("sum_set", "pss", "maximal_skew")
DEDUP_FLAGS = ("complement", "central_translate", "inversion")
SUITES = (
    "abelian-reversible",
    "abelian-is-ds",
    "no-cyclic",
    "higher-order",
    "rdsss",
    "coset-eq",
    "shds-pss",
)
SEARCH_ORDER_CAP = 24
MAX_SKEW_ORDER_CAP = 24
_CLOCK_EVERY = 4096  # nodes between deadline checks


class SearchError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchQuery:
    group_spec: str
    k_range: Optional[tuple[int, int]] = None  # inclusive; default [1, v/2]
    mode: str = "sum_set"
    dedup: frozenset[str] = frozenset()
    max_results: Optional[int] = None
    budget_seconds: Optional[float] = None
    include_trivial: bool = False
    threads: int = 1

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise SearchError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        bad = set(self.dedup) - set(DEDUP_FLAGS)
        if bad:
            raise SearchError(f"unknown dedup flag(s) {sorted(bad)}")
        object.__setattr__(self, "dedup", frozenset(self.dedup))
        if self.threads < 1:
            raise SearchError("threads must be >= 1")

    def resolved_k_range(self, v: int) -> tuple[int, int]:
        lo, hi = self.k_range if self.k_range is not None else (1, v // 2)
        if lo < 0 or hi > v or lo > hi:
            raise SearchError(f"k range [{lo}, {hi}] is not inside [0, {v}]")
        return lo, hi

    def to_json(self) -> dict[str, Any]:
        return {
            "group_spec": self.group_spec,
            "k_range": list(self.k_range) if self.k_range else None,
            "mode": self.mode,
            "dedup": sorted(self.dedup),
            "max_results": self.max_results,
            "budget_seconds": self.budget_seconds,
            "include_trivial": self.include_trivial,
        }


@dataclass
class FoundSet:
    subset: Subset
    params: Optional[PssParams]

    @property
    def key(self) -> tuple[int, int]:
        return (len(self.subset), self.subset.bits)

    def to_json(self) -> dict[str, Any]:
        from .regularity import certificate

        return certificate(self.subset)


@dataclass
class SearchReport:
    query: SearchQuery
    group: FiniteGroup
    results: list[FoundSet]
    counts: dict[str, int]
    raw_counts: dict[str, int]
    trivial_count: int
    exhaustive: bool
    nodes: int
    elapsed: float = 0.0
    stop_reason: Optional[str] = None

    def to_json(self, with_results: bool = True, with_stats: bool = False) -> dict[str, Any]:
        """Canonical form; node counts and timing depend on the thread split, so they are opt-in."""
        out: dict[str, Any] = {
            "query": self.query.to_json(),
            "order": self.group.order,
            "counts": dict(sorted(self.counts.items())),
            "raw_counts": dict(sorted(self.raw_counts.items())),
            "trivial_count": self.trivial_count,
            "exhaustive": self.exhaustive,
            "n_results": len(self.results),
        }
        if self.stop_reason:
            out["stop_reason"] = self.stop_reason
        if with_results:
            out["results"] = [r.to_json() for r in self.results]
        if with_stats:
            out["nodes"] = self.nodes
            out["elapsed"] = self.elapsed
        return out


# ---------------------------------------------------------------- the scan


def mu_bounds(v: int, k: int) -> tuple[int, int]:
    """Range of mu allowed by k^2 = mu(v-1) + s with 0 <= s <= k."""
    if v < 2:
        return (0, k * k)
    return (-(-(k * k - k) // (v - 1)), (k * k) // (v - 1))


def _scan(
    rows: list[list[int]],
    v: int,
    k: int,
    prefix: Sequence[int],
    mode: str,
    deadline: Optional[float],
    max_hits: Optional[int],
) -> tuple[list[int], int, bool]:
    """All k-subsets extending ``prefix`` with larger indices that pass the leaf test.

    Returns (hit bitmasks, nodes visited, completed).
    """
    counts = [0] * v
    members: list[int] = []
    hits: list[int] = []
    nodes = 0
    lo_mu, hi_mu = mu_bounds(v, k)
    prune = mode == "sum_set"
    cap = hi_mu

    def push(a: int) -> bool:
        ra = rows[a]
        ok = True
        g = ra[a]
        counts[g] += 1
        if g and counts[g] > cap:
            ok = False
        for b in members:
            g = ra[b]
            counts[g] += 1
            if g and counts[g] > cap:
                ok = False
            g = rows[b][a]
            counts[g] += 1
            if g and counts[g] > cap:
                ok = False
        members.append(a)
        return ok or not prune

    def pop() -> None:
        a = members.pop()
        ra = rows[a]
        counts[ra[a]] -= 1
        for b in members:
            counts[ra[b]] -= 1
            counts[rows[b][a]] -= 1

    def leaf() -> bool:
        if mode == "sum_set":
            c = counts[1] if v > 1 else 0
            return lo_mu <= c and all(x == c for x in counts[1:])
        inside = set(members)
        lam = mu = None
        for g in range(1, v):
            c = counts[g]
            if g in inside:
                if lam is None:
                    lam = c
                elif c != lam:
                    return False
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    return False
        return True

    class _Stop(Exception):
        pass

    def rec(start: int, depth: int) -> None:
        nonlocal nodes
        if depth == k:
            if leaf():
                bits = 0
                for m in members:
                    bits |= 1 << m
                hits.append(bits)
                if max_hits is not None and len(hits) >= max_hits:
                    raise _Stop
            return
        last = v - (k - depth)
        for a in range(start, last + 1):
            nodes += 1
            if deadline is not None and nodes % _CLOCK_EVERY == 0 and time.monotonic() > deadline:
                raise _Stop
            if push(a):
                rec(a + 1, depth + 1)
            pop()

    completed = True
    try:
        ok = True
        for a in prefix:
            ok = push(a) and ok
        if ok:
            start = prefix[-1] + 1 if prefix else 0
            rec(start, len(prefix))
    except _Stop:
        completed = False
    return hits, nodes, completed


def _tasks(v: int, k: int) -> list[tuple[int, ...]]:
    """Disjoint subtrees keyed by the two smallest members."""
    if k == 0:
        return [()]
    if k == 1:
        return [(a,) for a in range(v)]
    return [(a, b) for a in range(v - k + 1) for b in range(a + 1, v - k + 2)]


def _worker(args: tuple) -> tuple[tuple[int, ...], int, list[int], int, bool]:
    spec, k, prefix, mode, deadline_left, max_hits = args
    G = parse_group(spec)
    deadline = None if deadline_left is None else time.monotonic() + deadline_left
    hits, nodes, done = _scan(G.rows, G.order, k, prefix, mode, deadline, max_hits)
    return prefix, k, hits, nodes, done


def _orbit(S: Subset, dedup: frozenset[str], invs: list[int]) -> list[Subset]:
    seen = {S.bits: S}
    todo = [S]
    while todo:
        T = todo.pop()
        nxt = []
        if "complement" in dedup:
            nxt.append(T.complement())
        if "inversion" in dedup:
            nxt.append(T.inverse())
        if "central_translate" in dedup:
            nxt.extend(T.right_translate(z) for z in invs)
        for U in nxt:
            if U.bits not in seen:
                seen[U.bits] = U
                todo.append(U)
    return list(seen.values())


def _param_key(p: Optional[PssParams], mode: str) -> str:
    if p is None:
        return "none"
    return str(p) if mode != "pss" else f"({p.v},{p.k},{p.lam},{p.mu})"


def enumerate_maximal_skew(G: FiniteGroup, deadline: Optional[float] = None) -> list[Subset]:
    """Every maximal skew set: one element from each inverse pair of elements of order > 2."""
    if G.order > MAX_SKEW_ORDER_CAP:
        raise SearchError(f"maximal skew enumeration is limited to order <= {MAX_SKEW_ORDER_CAP}")
    pairs = []
    for g in range(G.order):
        h = G.inv[g]
        if G.element_order(g) > 2 and g < h:
            pairs.append((g, h))
    out = []
    for i, choice in enumerate(range(1 << len(pairs))):
        if deadline is not None and i % _CLOCK_EVERY == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("maximal skew enumeration exceeded its budget")
        bits = 0
        for j, (g, h) in enumerate(pairs):
            bits |= 1 << (h if choice >> j & 1 else g)
        out.append(Subset(G, bits))
    out.sort(key=lambda S: S.bits)
    return out


def exhaustive_search(q: SearchQuery, group: Optional[FiniteGroup] = None) -> SearchReport:
    t0 = time.monotonic()
    G = group if group is not None else parse_group(q.group_spec)
    v = G.order
    if v > SEARCH_ORDER_CAP:
        raise SearchError(f"exhaustive search is limited to order <= {SEARCH_ORDER_CAP}, got {v}")
    lo, hi = q.resolved_k_range(v)
    deadline = None if q.budget_seconds is None else t0 + q.budget_seconds
    exhaustive = True
    stop_reason = None
    nodes = 0
    hit_bits: list[int] = []

    if q.mode == "maximal_skew":
        try:
            sets = enumerate_maximal_skew(G, deadline)
        except BudgetExceeded:
            sets, exhaustive, stop_reason = [], False, "budget"
        hit_bits = [S.bits for S in sets if lo <= len(S) <= hi]
        nodes = len(sets)
    else:
        ks = [k for k in range(max(lo, 1), hi + 1)]
        if q.threads > 1 and group is None:
            jobs = []
            left = None if deadline is None else max(0.0, deadline - time.monotonic())
            for k in ks:
                for prefix in _tasks(v, k):
                    jobs.append((q.group_spec, k, prefix, q.mode, left, q.max_results))
            with ProcessPoolExecutor(max_workers=q.threads) as ex:
                parts = list(ex.map(_worker, jobs, chunksize=max(1, len(jobs) // (8 * q.threads))))
            for _, _, hits, n, done in parts:
                hit_bits.extend(hits)
                nodes += n
                if not done:
                    exhaustive = False
        else:
            for k in ks:
                remaining = None if q.max_results is None else q.max_results - len(hit_bits)
                hits, n, done = _scan(G.rows, v, k, (), q.mode, deadline, remaining)
                hit_bits.extend(hits)
                nodes += n
                if not done:
                    exhaustive = False
                    break
        if not exhaustive:
            stop_reason = "budget" if deadline is not None and time.monotonic() > deadline else "max_results"

    hit_bits = sorted(set(hit_bits), key=lambda b: (bin(b).count("1"), b))
    trivial = 0
    certified: list[FoundSet] = []
    for bits in hit_bits:
        S = Subset(G, bits)
        cl = classify(S)
        if q.mode == "sum_set" and not cl.is_sum_set:
            raise AssertionError(f"scan reported {S!r} but it does not certify as a sum set")
        if q.mode == "pss" and not cl.is_partial_sum_set:
            raise AssertionError(f"scan reported {S!r} but it does not certify as a partial sum set")
        if is_trivial(S):
            trivial += 1
            if not q.include_trivial:
                continue
        certified.append(FoundSet(S, cl.params))

    raw_counts: dict[str, int] = {}
    for f in certified:
        key = _param_key(f.params, q.mode)
        raw_counts[key] = raw_counts.get(key, 0) + 1

    results = certified
    if q.dedup:
        invs = central_involutions(G)
        seen: set[int] = set()
        results = []
        for f in certified:  # sorted, so the first member of each class is kept
            if f.subset.bits in seen:
                continue
            for T in _orbit(f.subset, q.dedup, invs):
                seen.add(T.bits)
            results.append(f)
    if q.max_results is not None and len(results) > q.max_results:
        results = results[: q.max_results]
        exhaustive = False
        stop_reason = stop_reason or "max_results"
    counts: dict[str, int] = {}
    for f in results:
        key = _param_key(f.params, q.mode)
        counts[key] = counts.get(key, 0) + 1
    return SearchReport(
        query=q,
        group=G,
        results=results,
        counts=counts,
        raw_counts=raw_counts,
        trivial_count=trivial,
        exhaustive=exhaustive,
        nodes=nodes,
        elapsed=time.monotonic() - t0,
        stop_reason=stop_reason,
    )


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SUMSETS_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------- per-set checks


def check_higher_order(S: Subset, params: Optional[PssParams] = None, m_max: int = 2) -> list[dict[str, Any]]:
    """Direct powers of S against the closed forms for S^(2m) and S^(2m+1)."""
    if params is None:
        cl = classify(S)
        if not cl.is_sum_set:
            raise SearchError(f"{S!r} is not a sum set")
        params = cl.params
    assert params is not None
    X = from_subset(S)
    failures = []
    P = X
    for e in range(2, 2 * m_max + 2):
        P = P * X
        m = e // 2
        if e % 2 == 0:
            want = sum_set_even_power_closed_form(params, m, S.group)
        else:
            want = sum_set_odd_power_closed_form(params, m, S)
        if P != want:
            failures.append({"set": S.label_list(), "power": e})
    return failures


def check_rdsss(S: Subset) -> list[dict[str, Any]]:
    """Any two of {difference set, sum set, reversible} force the third, with lambda = mu."""
    cl = classify(S, check_special=False)
    ds, ss, rev = cl.is_difference_set, cl.is_sum_set, cl.is_reversible
    out = []
    if sum((ds, ss, rev)) == 2:
        out.append({"set": S.label_list(), "ds": ds, "ss": ss, "rev": rev})
    elif ds and ss and rev and cl.params is not None and cl.difference_lambda != cl.params.mu:
        out.append({"set": S.label_list(), "lambda": cl.difference_lambda, "mu": cl.params.mu})
    return out


def check_coset_equations(S: Subset, params: Optional[PssParams] = None) -> list[dict[str, Any]]:
    G = S.group
    out = []
    for N in normal_subgroups(G):
        rep = full_coset_analysis(S, N, params)
        if not rep["holds"]:
            out.append({"set": S.label_list(), "N": N.label_list(), "report": _jsonable(rep)})
    return out


def _jsonable(x: Any) -> Any:
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# ---------------------------------------------------------------- property suites


@dataclass
class SuiteReport:
    name: str
    scope: list[str]
    passed: bool
    checked: int
    failures: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "scope": self.scope,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "details": self.details,
        }


def _k_cap(v: int) -> int:
    return v // 2 if v <= 16 else min(v // 2, 9)


def _search_all(spec: str, budget: Optional[float], threads: int = 1) -> SearchReport:
    G = parse_group(spec)
    q = SearchQuery(spec, (1, _k_cap(G.order)), budget_seconds=budget, threads=threads)
    rep = exhaustive_search(q)
    if not rep.exhaustive:
        raise BudgetExceeded(f"search over {spec} did not finish within budget")
    return rep


def _is_cyclic(G: FiniteGroup) -> bool:
    return G.order in G.orders


def property_suite(
    name: str,
    scope: Sequence[str],
    seed: int = 0,
    budget_seconds: Optional[float] = None,
    threads: int = 1,
    extra_sets: Iterable[Subset] = (),
) -> SuiteReport:
    """Run one named empirical check over every sum set found in ``scope``.

    ``extra_sets`` adds sets obtained elsewhere (e.g. from constructions).
    """
    if name not in SUITES:
        raise SearchError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    failures: list[dict[str, Any]] = []
    checked = 0
    details: dict[str, Any] = {}
    extra = list(extra_sets)

    if name == "shds-pss":
        from .constructions import paley_skew_pss

        for spec in scope:
            q = _order_from_spec(spec)
            res = paley_skew_pss(q)
            cl = classify(res.set)
            p = cl.params
            checked += 1
            want = (q, (q - 1) // 2, (q - 3) // 4, (q + 1) // 4)
            ok = (
                is_skew(res.set)
                and cl.is_difference_set
                and cl.difference_lambda == (q - 3) // 4
                and p is not None
                and p.quad() == want
            )
            if not ok:
                failures.append({"q": q, "params": str(p) if p else None})
        return SuiteReport(name, list(scope), not failures, checked, failures, details)

    if name == "rdsss":
        for spec in scope:
            G = parse_group(spec)
            if G.order > 12:
                raise SearchError("rdsss sweeps every subset; keep v <= 12")
            for S in all_subsets(G):
                checked += 1
                failures.extend(check_rdsss(S))
        return SuiteReport(name, list(scope), not failures, checked, failures, details)

    per_group: dict[str, int] = {}
    for spec in scope:
        G = parse_group(spec)
        if name in ("abelian-reversible", "abelian-is-ds") and not G.is_abelian:
            raise SearchError(f"{spec} is not abelian")
        if name == "no-cyclic" and not _is_cyclic(G):
            raise SearchError(f"{spec} is not cyclic")
        rep = _search_all(spec, budget_seconds, threads)
        per_group[spec] = len(rep.results)
        sets = [f.subset for f in rep.results] + [S for S in extra if S.group.is_same(G)]
        for S in sets:
            checked += 1
            cl = classify(S)
            if name == "no-cyclic":
                failures.append({"group": spec, "set": S.label_list()})
            elif name == "abelian-reversible":
                if not cl.is_reversible:
                    failures.append({"group": spec, "set": S.label_list(), "why": "not reversible"})
                if cl.params is not None and cl.params.mu % 2:
                    failures.append({"group": spec, "set": S.label_list(), "why": "odd mu"})
            elif name == "abelian-is-ds":
                if not (cl.is_reversible and cl.is_difference_set):
                    failures.append({"group": spec, "set": S.label_list()})
            elif name == "higher-order":
                failures.extend(check_higher_order(S, cl.params))
            elif name == "coset-eq":
                failures.extend(check_coset_equations(S, cl.params))
    # sets from other groups still get checked for the group-independent suites
    for S in extra:
        if any(S.group.is_same(parse_group(s)) for s in scope):
            continue
        if name == "higher-order":
            checked += 1
            failures.extend(check_higher_order(S))
        elif name == "coset-eq":
            checked += 1
            failures.extend(check_coset_equations(S))
    details["sum_sets_per_group"] = per_group
    details["seed"] = seed
    return SuiteReport(name, list(scope), not failures, checked, failures, details)


def _order_from_spec(spec: str) -> int:
    for prefix in ("ea:", "cyclic:"):
        if spec.startswith(prefix):
            return int(spec[len(prefix):])
    if spec.isdigit():
        return int(spec)
    raise SearchError(f"shds-pss scope entries are ea:q, cyclic:q or q, got {spec!r}")
