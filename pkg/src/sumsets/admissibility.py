"""Parameter and coset-level filters for sum sets.

The coset machinery fixes a normal subgroup N, writes X[a] = |S & N_a| for
each coset a of the quotient H = G/N, and compares the convolution
sum_a X[a] X[a^-1 b] against mu*o(N) (+ n at b = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

from .groups import FiniteGroup, GroupError, Subset, check_same_group, is_normal, is_subgroup, quotient
from .regularity import PssParams, classify, special_subsets

WARN = "warn"
REJECT = "reject"


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass
class Rejection:
    rule: str
    citation: str
    detail: str = ""
    level: str = REJECT

    def to_json(self) -> dict[str, Any]:
        out = {"rule": self.rule, "citation": self.citation}
        if self.detail:
            out["detail"] = self.detail
        if self.level != REJECT:
            out["level"] = self.level
        return out


@dataclass
class AdmissibilityVerdict:
    v: int
    k: int
    mu: int
    s_inv: int
    n: int
    rejections: list[Rejection] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return not any(r.level == REJECT for r in self.rejections)

    def to_json(self) -> dict[str, Any]:
        return {
            "v": self.v,
            "k": self.k,
            "mu": self.mu,
            "admissible": self.admissible,
            "n": self.n,
            "s_inv": self.s_inv,
            "rejections": [r.to_json() for r in self.rejections],
        }


def check_admissible(v: int, k: int, mu: int, normalized: bool = True) -> AdmissibilityVerdict:
    """k^2 = mu(v-1) + s_inv must leave 0 <= s_inv <= k.

    With ``normalized`` the size restriction k <= v/2 is enforced as well;
    complements of normalized parameters need ``normalized=False``.
    """
    if not (v > k > mu >= 0):
        raise ValueError(f"need v > k > mu >= 0, got ({v}, {k}, {mu})")
    s_inv = k * k - mu * (v - 1)
    verdict = AdmissibilityVerdict(v, k, mu, s_inv, k * k - mu * v)
    if not 0 <= s_inv <= k:
        verdict.rejections.append(
            Rejection("parameter-equation", "k^2 = mu(v-1) + |S & S^-1|", f"implied |S & S^-1| = {s_inv} outside [0, {k}]")
        )
    if normalized and 2 * k > v:
        verdict.rejections.append(Rejection("normalization", "complements let k <= v/2 be assumed", f"k = {k} > v/2"))
    return verdict


def abelian_filters(v: int, k: int, mu: int, group_is_odd_order: Optional[bool] = None) -> list[Rejection]:
    """Necessary conditions for a nontrivial sum set in an abelian group of order v."""
    odd = v % 2 == 1 if group_is_odd_order is None else group_is_odd_order
    n = k * k - mu * v
    out = []
    if odd:
        out.append(Rejection("odd-abelian", "no sum sets in abelian groups of odd order", f"abelian group of odd order {v}"))
    if mu % 2:
        out.append(Rejection("mu-even", "abelian sum sets have even mu", f"mu = {mu} is odd"))
    if n == 0:
        out.append(Rejection("n-nonzero", "abelian sum sets are reversible difference sets with n a nonzero square", "n = 0"))
    elif not is_square(n):
        out.append(Rejection("n-square", "abelian sum sets are reversible difference sets with n a nonzero square", f"n = {n} is not a square"))
    return out


def sumner_butson_filter(v: int, k: int, mu: int) -> list[Rejection]:
    """n is always a square (cited result, reported at warn level only)."""
    n = k * k - mu * v
    if is_square(n):
        return []
    return [Rejection("n-square-general", "n is a square for every sum set (external result, advisory)", f"n = {n} is not a square", level=WARN)]


def parameter_scan(v: int, abelian: bool = False, advisory: bool = True) -> list[AdmissibilityVerdict]:
    """Every (v, k, mu) with 1 <= k <= v/2 whose implied |S & S^-1| lies in [0, k]."""
    out = []
    for k in range(1, v // 2 + 1):
        for mu in range(0, k):
            s_inv = k * k - mu * (v - 1)
            if not 0 <= s_inv <= k:
                continue
            verdict = check_admissible(v, k, mu)
            if abelian:
                verdict.rejections.extend(abelian_filters(v, k, mu))
            if advisory:
                verdict.rejections.extend(sumner_butson_filter(v, k, mu))
            out.append(verdict)
    return out


@dataclass
class TwoValued:
    M: list[int]  # quotient indices where X takes the value m
    m: int
    l: int
    omega: Optional[int]


@dataclass
class CosetProfile:
    group: FiniteGroup
    subset: Subset
    normal_subgroup: Subset
    quotient: FiniteGroup
    projection: list[int]
    X: list[int]

    @property
    def values(self) -> list[int]:
        return sorted(set(self.X))

    def two_valued(self) -> Optional[TwoValued]:
        """Orientation with the larger value on M; None unless exactly two values."""
        vals = self.values
        if len(vals) != 2:
            return None
        l, m = vals
        M = [a for a, x in enumerate(self.X) if x == m]
        return TwoValued(M, m, l, None)

    def to_json(self) -> dict[str, Any]:
        return {
            "normal_subgroup": self.normal_subgroup.label_list(),
            "quotient_order": self.quotient.order,
            "X": {self.quotient.labels[a]: x for a, x in enumerate(self.X)},
        }


def _require_normal(G: FiniteGroup, N: Subset) -> None:
    check_same_group(G, N)
    if not is_normal(G, N):
        raise GroupError("N must be a normal subgroup")


def coset_profile(S: Subset, N: Subset) -> CosetProfile:
    G = S.group
    _require_normal(G, N)
    H, proj = quotient(G, N)
    X = [0] * H.order
    for s in S.members:
        X[proj[s]] += 1
    return CosetProfile(G, S, N, H, proj, X)


def _sum_set_params(S: Subset) -> PssParams:
    cl = classify(S, check_special=False)
    if not cl.is_sum_set or cl.params is None:
        raise ValueError(f"{S!r} is not a sum set")
    return cl.params


def coset_convolution(cp: CosetProfile) -> list[int]:
    """LHS[b] = sum over a in H of X[a] X[a^-1 b]."""
    H = cp.quotient
    rows, inv = H.rows, H.inv
    X = cp.X
    return [sum(X[a] * X[rows[inv[a]][b]] for a in range(H.order)) for b in range(H.order)]


@dataclass
class CosetEquationReport:
    holds: bool
    lhs: list[int]
    rhs: list[int]
    profile: CosetProfile

    def failures(self) -> list[int]:
        return [b for b, (x, y) in enumerate(zip(self.lhs, self.rhs)) if x != y]

    def to_json(self) -> dict[str, Any]:
        H = self.profile.quotient
        return {
            "holds": self.holds,
            "per_coset": [
                {"beta": H.labels[b], "lhs": x, "rhs": y} for b, (x, y) in enumerate(zip(self.lhs, self.rhs))
            ],
        }


def verify_coset_equation(S: Subset, N: Subset, params: Optional[PssParams] = None) -> CosetEquationReport:
    p = params or _sum_set_params(S)
    cp = coset_profile(S, N)
    lhs = coset_convolution(cp)
    base = p.mu * len(N)
    rhs = [base + (p.n if b == 0 else 0) for b in range(cp.quotient.order)]
    return CosetEquationReport(lhs == rhs, lhs, rhs, cp)


@dataclass
class ClauseResult:
    clause: str
    applicable: bool
    holds: bool
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass
class TwoValueReport:
    profile: CosetProfile
    clauses: list[ClauseResult]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.clauses if c.applicable)

    def to_json(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "clauses": [
                {"clause": c.clause, "applicable": c.applicable, "holds": c.holds, **c.detail}
                for c in self.clauses
            ],
        }


def _orientation_clauses(
    cp: CosetProfile, M_idx: list[int], m: int, l: int, p: PssParams, tag: str
) -> list[ClauseResult]:
    H = cp.quotient
    M = Subset.from_indices(H, M_idx)
    c_sizes = [len(special_subsets(M, b)[2]) for b in range(H.order)]
    nonid = c_sizes[1:]
    omega = nonid[0] if nonid and all(c == nonid[0] for c in nonid) else None
    out = []
    # (i) M is a sum set in H; a subgroup M must be {1} or H
    sub_ok = (not is_subgroup(H, M)) or len(M) in (1, H.order)
    out.append(
        ClauseResult(
            f"i[{tag}]",
            True,
            omega is not None and sub_ok,
            {"omega": omega, "M": M.label_list(), "m": m, "l": l},
        )
    )
    # (ii) n = (|C_{1,M}| - omega)(m - l)^2
    if omega is not None:
        rhs = (c_sizes[0] - omega) * (m - l) ** 2
        out.append(ClauseResult(f"ii[{tag}]", True, rhs == p.n, {"C_1M": c_sizes[0], "rhs": rhs, "n": p.n}))
    # (iii) M = {1}: l = (k +- sqrt n)/o(H), n a perfect square
    if M_idx == [0]:
        detail: dict[str, Any] = {"n": p.n, "l": l}
        ok = is_square(p.n)
        sign = None
        if ok:
            r = math.isqrt(p.n)
            for sgn in (+1, -1):
                num = p.k + sgn * r
                if num % H.order == 0 and num // H.order == l:
                    sign = sgn
                    break
            ok = sign is not None
        if ok:
            # complement: k' = v - k, n' = n, l' = o(N) - l on the same coset pattern
            k_c = p.v - p.k
            l_c = len(cp.normal_subgroup) - l
            num = k_c - sign * math.isqrt(p.n)
            comp_ok = num % H.order == 0 and num // H.order == l_c
            detail["complement_opposite_sign"] = comp_ok
            ok = comp_ok
        detail["sign"] = sign
        out.append(ClauseResult(f"iii[{tag}]", True, ok, detail))
    return out


def two_value_analysis(S: Subset, N: Subset, params: Optional[PssParams] = None) -> TwoValueReport:
    """Check every applicable clause for a profile with at most two values.

    Both orientations (M on the larger value, and M on the smaller value) are
    evaluated since which value is called m is arbitrary.
    """
    p = params or _sum_set_params(S)
    cp = coset_profile(S, N)
    vals = cp.values
    if len(vals) > 2:
        raise ValueError(f"coset profile takes {len(vals)} values, not at most two")
    clauses: list[ClauseResult] = []
    if len(vals) == 1:
        m = vals[0]
        # with a trivial quotient there is no coset b != 1 to compare against
        applicable = cp.quotient.order > 1
        ok = p.n == 0 and p.k != 0 and m * p.k == p.mu * len(N)
        clauses.append(ClauseResult("iv", applicable, ok, {"n": p.n, "m": m}))
        return TwoValueReport(cp, clauses)
    l, m = vals
    hi = [a for a, x in enumerate(cp.X) if x == m]
    lo = [a for a, x in enumerate(cp.X) if x == l]
    clauses += _orientation_clauses(cp, hi, m, l, p, "M=high")
    clauses += _orientation_clauses(cp, lo, l, m, p, "M=low")
    return TwoValueReport(cp, clauses)


@dataclass
class IndexVerdict:
    holds: bool
    detail: dict[str, Any]
    two_value: Optional[TwoValueReport] = None


def index2_check(S: Subset, N: Subset, params: Optional[PssParams] = None) -> IndexVerdict:
    G = S.group
    _require_normal(G, N)
    if G.order != 2 * len(N):
        raise ValueError("index2_check needs a normal subgroup of index 2")
    p = params or _sum_set_params(S)
    ok = is_square(p.n) and (p.k % 2 == 0 or p.n > 0)
    return IndexVerdict(ok, {"n": p.n, "k": p.k})


def index3_check(S: Subset, N: Subset, params: Optional[PssParams] = None) -> IndexVerdict:
    G = S.group
    _require_normal(G, N)
    if G.order != 3 * len(N):
        raise ValueError("index3_check needs a normal subgroup of index 3")
    p = params or _sum_set_params(S)
    cp = coset_profile(S, N)
    if len(set(cp.X)) < 3:
        rep = two_value_analysis(S, N, p)
        return IndexVerdict(rep.holds, {"routed": "two_value_analysis"}, rep)
    H = cp.quotient
    h = 1  # H is cyclic of order 3: indices 0, h, h^2
    h2 = H.rows[h][h]
    X1, Xh = cp.X[0], cp.X[h]
    detail: dict[str, Any] = {"X": cp.X, "n": p.n}
    if p.k % 3 or 3 * X1 != p.k:
        return IndexVerdict(False, detail)
    x = Xh - p.k // 3
    detail["x"] = x
    ok = (
        x != 0
        and p.n == -3 * x * x
        and cp.X[h2] == p.k // 3 - x
        and 3 * p.mu * len(N) - p.k * p.k == 3 * x * x
    )
    return IndexVerdict(ok, detail)


@dataclass
class MuonVerdict:
    active: bool
    holds: bool
    witnesses: list[str]


def central_nonsquares(H: FiniteGroup) -> list[int]:
    rows = H.rows
    squares = {rows[a][a] for a in range(H.order)}
    central = [b for b in range(H.order) if all(rows[b][a] == rows[a][b] for a in range(H.order))]
    return [b for b in central if b not in squares]


def muon_check(G: FiniteGroup, N: Subset, mu: int) -> MuonVerdict:
    """A central non-square in G/N forces mu*o(N) to be even."""
    _require_normal(G, N)
    H, _ = quotient(G, N)
    wit = central_nonsquares(H)
    active = bool(wit)
    holds = (not active) or (mu * len(N)) % 2 == 0
    return MuonVerdict(active, holds, [H.labels[b] for b in wit])


def full_coset_analysis(S: Subset, N: Subset, params: Optional[PssParams] = None) -> dict[str, Any]:
    """Every applicable coset-level check for one sum set and one normal subgroup."""
    G = S.group
    p = params or _sum_set_params(S)
    eq = verify_coset_equation(S, N, p)
    out: dict[str, Any] = {"coset_equation": eq.holds}
    idx = G.order // len(N)
    cp = eq.profile
    if len(set(cp.X)) <= 2:
        out["two_value"] = two_value_analysis(S, N, p).holds
    if idx == 2:
        out["index2"] = index2_check(S, N, p).holds
    if idx == 3:
        out["index3"] = index3_check(S, N, p).holds
    out["muon"] = muon_check(G, N, p.mu).holds
    out["summed_rhs"] = sum(eq.rhs) == p.mu * (G.order - 1) + (p.s_inv if p.s_inv is not None else p.n + p.mu)
    out["holds"] = all(v for v in out.values())
    return out
