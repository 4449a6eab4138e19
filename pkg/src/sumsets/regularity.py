"""Representation counts and classification of subsets.

A representation of g as a product in S is an ordered pair (x, y) in S x S
with xy = g, x = y allowed.  With this convention the identity is hit
|S & S^-1| times and the counts over G add up to |S|^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .groups import FiniteGroup, GroupError, Subset, center, check_same_group, is_normal


@dataclass(frozen=True)
class PssParams:
    """(v, k, lambda, mu); lam == mu for a sum set."""

    v: int
    k: int
    lam: int
    mu: int
    s_inv: Optional[int] = None

    @property
    def n(self) -> int:
        return self.k * self.k - self.mu * self.v

    @property
    def is_sum_set(self) -> bool:
        return self.lam == self.mu

    def triple(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.mu)

    def quad(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"v": self.v, "k": self.k, "mu": self.mu, "n": self.n}
        if not self.is_sum_set:
            out["lambda"] = self.lam
        if self.s_inv is not None:
            out["s_inv"] = self.s_inv
        return out

    def __str__(self) -> str:
        if self.is_sum_set:
            return f"({self.v},{self.k},{self.mu})"
        return f"({self.v},{self.k},{self.lam},{self.mu})"


def sum_set_params(v: int, k: int, mu: int, s_inv: Optional[int] = None) -> PssParams:
    return PssParams(v, k, mu, mu, s_inv)


@dataclass(frozen=True, eq=False)
class RegularityProfile:
    subset: Subset
    product_counts: np.ndarray
    quotient_counts: np.ndarray

    @property
    def group(self) -> FiniteGroup:
        return self.subset.group


def profile(S: Subset) -> RegularityProfile:
    """Ordered-pair counts of every element as a product and as a quotient in S."""
    G = S.group
    m = np.fromiter(S.members, dtype=np.int64, count=len(S))
    M = G.mul_table
    inv = G.inverse_table.astype(np.int64)
    if len(m):
        prod = np.bincount(M[np.ix_(m, m)].ravel(), minlength=G.order)
        quot = np.bincount(M[np.ix_(m, inv[m])].ravel(), minlength=G.order)
    else:
        prod = np.zeros(G.order, dtype=np.int64)
        quot = np.zeros(G.order, dtype=np.int64)
    prod.flags.writeable = False
    quot.flags.writeable = False
    return RegularityProfile(S, prod, quot)


def special_subsets(S: Subset, a: int) -> tuple[Subset, Subset, Subset]:
    """(A, B, C): left quotient factors, right quotient factors, left product factors of a."""
    G = S.group
    if not 0 <= a < G.order:
        raise GroupError(f"element {a} out of range")
    rows, inv = G.rows, G.inv
    ai = inv[a]
    A = [x for x in S.members if rows[ai][x] in S]  # y = a^-1 x
    B = [y for y in S.members if rows[a][y] in S]  # x = a y
    C = [x for x in S.members if rows[inv[x]][a] in S]  # y = x^-1 a
    return Subset.from_indices(G, A), Subset.from_indices(G, B), Subset.from_indices(G, C)


def is_skew(S: Subset) -> bool:
    return (S & S.inverse()).bits == 0


def is_reversible(S: Subset) -> bool:
    return S == S.inverse()


def is_trivial(S: Subset) -> bool:
    """Empty set, {g} with o(g) <= 2, and the complements of those."""
    G = S.group
    for T in (S, S.complement()):
        if len(T) == 0:
            return True
        if len(T) == 1 and G.element_order(T.members[0]) <= 2:
            return True
    return False


def maximal_skew_test(S: Subset) -> bool:
    """A skew set is maximal iff every element of order > 2 lies in S or S^-1."""
    if not is_skew(S):
        raise ValueError("maximal_skew_test needs a skew set")
    G = S.group
    cover = S | S.inverse()
    return all(g in cover for g in range(G.order) if G.element_order(g) > 2)


def _constant(values: np.ndarray) -> Optional[int]:
    if len(values) == 0:
        return None
    first = int(values[0])
    return first if bool(np.all(values == first)) else None


def central_involutions(G: FiniteGroup) -> list[int]:
    Z = center(G)
    return [z for z in Z.members if z != 0 and G.element_order(z) == 2]


@dataclass
class Classification:
    subset: Subset
    profile: RegularityProfile
    is_sum_set: bool
    is_partial_sum_set: bool
    is_difference_set: bool
    is_skew: bool
    is_reversible: bool
    is_maximal_skew: bool
    is_trivial: bool
    params: Optional[PssParams]
    difference_lambda: Optional[int]
    s_inv: int
    type_wrt: dict[str, str] = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {
            "is_sum_set": self.is_sum_set,
            "is_partial_sum_set": self.is_partial_sum_set,
            "is_difference_set": self.is_difference_set,
            "is_skew": self.is_skew,
            "is_reversible": self.is_reversible,
            "is_maximal_skew": self.is_maximal_skew,
            "is_trivial": self.is_trivial,
        }

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = dict(self.flags())
        out["s_inv"] = self.s_inv
        if self.difference_lambda is not None:
            out["difference_lambda"] = self.difference_lambda
        if self.type_wrt:
            out["type_wrt"] = self.type_wrt
        return out


def classify(
    S: Subset, prof: Optional[RegularityProfile] = None, check_special: bool = True
) -> Classification:
    G = S.group
    v, k = G.order, len(S)
    prof = prof or profile(S)
    if check_special and not special_subset_counts_agree(S, prof):
        raise AssertionError(f"special subset sizes disagree with pair counts for {S!r}")
    pc, qc = prof.product_counts, prof.quotient_counts
    mask = S.mask
    mask[0] = False
    out_mask = ~S.mask
    out_mask[0] = False
    lam = _constant(pc[mask])
    mu = _constant(pc[out_mask])
    in_defined = bool(mask.any())
    out_defined = bool(out_mask.any())
    # an empty side imposes no condition; borrow the other side's value
    if not in_defined:
        lam = mu if out_defined else 0
    if not out_defined:
        mu = lam
    is_pss = lam is not None and mu is not None
    is_ss = is_pss and lam == mu
    ds_lambda = _constant(qc[1:]) if v > 1 else 0
    s_inv = int(pc[0])
    skew = s_inv == 0
    params = PssParams(v, k, lam, mu, s_inv) if is_pss else None  # type: ignore[arg-type]
    if is_ss:
        # counts over G sum to k^2 and the identity takes s_inv of them
        if k * k != mu * (v - 1) + s_inv:  # type: ignore[operator]
            raise AssertionError(f"parameter equation fails for {S!r}")
    types = {}
    for z in central_involutions(G):
        N = Subset.from_indices(G, (0, z))
        types["{" + ",".join(N.label_list()) + "}"] = type_classify(S, N)
    return Classification(
        subset=S,
        profile=prof,
        is_sum_set=is_ss,
        is_partial_sum_set=is_pss,
        is_difference_set=ds_lambda is not None,
        is_skew=skew,
        is_reversible=is_reversible(S),
        is_maximal_skew=skew and maximal_skew_test(S),
        is_trivial=is_trivial(S),
        params=params,
        difference_lambda=ds_lambda,
        s_inv=s_inv,
        type_wrt=types,
    )


def has_params(S: Subset, v: int, k: int, lam: int, mu: int) -> bool:
    """True iff S is a (v, k, lam, mu) partial sum set, straight from the definition."""
    G = S.group
    if G.order != v or len(S) != k:
        return False
    pc = profile(S).product_counts
    for g in range(1, v):
        if pc[g] != (lam if g in S else mu):
            return False
    return True


def complement_params(p: PssParams) -> PssParams:
    """Parameters of G \\ S for a (v, k, mu) sum set S."""
    if not p.is_sum_set:
        raise ValueError("complement_params needs sum set parameters")
    mu = p.v - 2 * p.k + p.mu
    s_inv = None if p.s_inv is None else p.s_inv + p.v - 2 * p.k
    return PssParams(p.v, p.v - p.k, mu, mu, s_inv)


def _order_two_normal(N: Subset) -> int:
    G = N.group
    if len(N) != 2 or not is_normal(G, N):
        raise GroupError("type classification needs a normal subgroup of order 2")
    return N.members[1]


def type_classify(S: Subset, N: Subset) -> str:
    """'type1', 'type2' or 'neither' with respect to N = {1, z}."""
    check_same_group(S.group, N)
    z = _order_two_normal(N)
    G = S.group
    in_n = (0 in S) + (z in S)
    rows = G.rows
    pair_counts = []
    for g in range(G.order):
        gz = rows[g][z]
        if g < gz and g not in (0, z):
            pair_counts.append((g in S) + (gz in S))
    if in_n == 0 and all(c <= 1 for c in pair_counts):
        return "type1"
    if in_n == 1 and all(c in (0, 2) for c in pair_counts):
        return "type2"
    return "neither"


def central_translate(S: Subset, z: int) -> Subset:
    """Sz for a central element z of order at most 2."""
    G = S.group
    if G.element_order(z) > 2:
        raise GroupError("translation element must have order <= 2")
    if z not in center(G):
        raise GroupError("translation element must be central")
    return S.right_translate(z)


def certificate(S: Subset, group_spec: Optional[str] = None) -> dict[str, Any]:
    cl = classify(S)
    return {
        "group_spec": group_spec if group_spec is not None else S.group.spec,
        "set": S.label_list(),
        "product_counts": cl.profile.product_counts.tolist(),
        "quotient_counts": cl.profile.quotient_counts.tolist(),
        "classification": cl.to_json(),
        "params": cl.params.to_json() if cl.params else None,
    }


def special_subset_counts_agree(S: Subset, prof: Optional[RegularityProfile] = None) -> bool:
    """|C_{a,S}| and |A_{a,S}| against the ordered-pair counts, for every a."""
    prof = prof or profile(S)
    for a in range(S.group.order):
        A, _, C = special_subsets(S, a)
        if len(C) != prof.product_counts[a] or len(A) != prof.quotient_counts[a]:
            return False
    return True
