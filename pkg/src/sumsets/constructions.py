"""Deterministic generators for sum sets and partial sum sets.

Every generator recomputes the full product-count profile of its output and
fails loudly unless the profile matches the claimed parameters exactly.
All free choices are recorded in ``ConstructionResult.choices``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from .fields import prime_power
from .groups import (
    FiniteGroup,
    Subset,
    center,
    direct_product,
    is_normal,
    make_affine,
    make_cyclic,
    make_dihedral,
    make_dstar,
    make_elementary_abelian,
    make_frobenius_subgroup,
    make_generalized_dihedral,
    quotient,
)
from .regularity import (
    PssParams,
    RegularityProfile,
    certificate,
    classify,
    has_params,
    is_skew,
    maximal_skew_test,
    profile,
    sum_set_params,
    type_classify,
)


class ConstructionError(ValueError):
    pass


@dataclass
class ConstructionResult:
    group: FiniteGroup
    set: Subset
    claimed_params: PssParams
    certificate: RegularityProfile
    theorem_tag: str
    choices: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem_tag,
            "group_spec": self.group.spec,
            "set": self.set.label_list(),
            "claimed_params": self.claimed_params.to_json(),
            "certificate": certificate(self.set),
            "choices": self.choices,
        }


def _certify(
    G: FiniteGroup, S: Subset, claimed: PssParams, tag: str, choices: dict[str, Any]
) -> ConstructionResult:
    prof = profile(S)
    if not has_params(S, claimed.v, claimed.k, claimed.lam, claimed.mu):
        pc = prof.product_counts.tolist()
        raise ConstructionError(f"{tag}: {S!r} does not verify as {claimed}; counts {pc}")
    s_inv = int(prof.product_counts[0])
    claimed = PssParams(claimed.v, claimed.k, claimed.lam, claimed.mu, s_inv)
    return ConstructionResult(G, S, claimed, prof, tag, choices)


def _require_type(res: ConstructionResult, N: Subset, want: str) -> None:
    got = type_classify(res.set, N)
    if got != want:
        raise ConstructionError(f"{res.theorem_tag}: expected {want} w.r.t. {N!r}, got {got}")
    res.choices.setdefault("type", {})["{" + ",".join(N.label_list()) + "}"] = got


# ---------------------------------------------------------------- 2-lift / 2-project


@dataclass
class LiftResult:
    pss: ConstructionResult
    sum_sets: tuple[ConstructionResult, ConstructionResult]
    normal_subgroup: Subset


def lift2(P: Subset, verify_beta: Optional[int] = None) -> LiftResult:
    """P u Pz in K x {1, z}, then complete by adjoining 1 or z."""
    K = P.group
    cl = classify(P)
    if not cl.is_partial_sum_set or cl.params is None:
        raise ConstructionError("lift2: P is not a partial sum set")
    beta = cl.params.mu if verify_beta is None else verify_beta
    if cl.params.mu != beta or cl.params.lam != beta - 1:
        raise ConstructionError(
            f"lift2: P has parameters {cl.params}, not (v, k, beta-1, beta) with beta = {beta}"
        )
    if 0 in P:
        raise ConstructionError("lift2: P contains the identity")
    if cl.s_inv != beta:
        raise ConstructionError(f"lift2: |P & P^-1| = {cl.s_inv} != beta = {beta}")
    G = direct_product(K, make_cyclic(2))
    z = 1  # (1, z) in lexicographic pair order
    S = Subset.from_indices(G, [2 * p + e for p in P.members for e in (0, 1)])
    v, k = K.order, len(P)
    choices = {"P": P.label_list(), "K": K.spec, "beta": beta}
    pss = _certify(G, S, PssParams(2 * v, 2 * k, 2 * beta - 2, 2 * beta), "lift2-pss", dict(choices))
    N = Subset.from_indices(G, (0, z))
    claimed = sum_set_params(2 * v, 2 * k + 1, 2 * beta)
    outs = []
    for adj in (0, z):
        res = _certify(G, S.add(adj), claimed, "lift2", {**choices, "adjoined": G.labels[adj]})
        _require_type(res, N, "type2")
        outs.append(res)
    return LiftResult(pss, (outs[0], outs[1]), N)


def project2(S: Subset, N: Subset) -> ConstructionResult:
    """(S \\ N)/N for a type 2 sum set S with respect to N = {1, z}."""
    G = S.group
    if len(N) != 2 or not is_normal(G, N):
        raise ConstructionError("project2: N must be a normal subgroup of order 2")
    if type_classify(S, N) != "type2":
        raise ConstructionError("project2: S is not type 2 with respect to N")
    cl = classify(S)
    if not cl.is_sum_set or cl.params is None:
        raise ConstructionError("project2: S is not a sum set")
    if cl.params.mu % 2:
        raise ConstructionError(f"project2: mu = {cl.params.mu} is odd")
    beta = cl.params.mu // 2
    H, proj = quotient(G, N)
    P = Subset.from_indices(H, {proj[s] for s in (S - N).members})
    k = (len(S) - 1) // 2
    return _certify(
        H,
        P,
        PssParams(G.order // 2, k, beta - 1, beta),
        "project2",
        {"S": S.label_list(), "N": N.label_list()},
    )


# ---------------------------------------------------------------- dihedral


def maximal_skew_with_coset_property(n: int) -> Subset:
    """Greedy maximal skew set of C_n meeting each nontrivial <x^(n/2)>-coset once."""
    if n < 4 or n % 2:
        raise ConstructionError("need even n >= 4")
    C = make_cyclic(n)
    half = n // 2
    chosen: set[int] = set()
    hit: set[int] = set()
    for y in range(1, n):
        coset = min(y, (y + half) % n)
        if C.element_order(y) > 2 and C.inv[y] not in chosen and coset not in hit:
            chosen.add(y)
            hit.add(coset)
    M = Subset.from_indices(C, chosen)
    _check_coset_skew(M)
    return M


def _check_coset_skew(M: Subset) -> None:
    C = M.group
    n = C.order
    half = n // 2
    if not is_skew(M) or not maximal_skew_test(M):
        raise ConstructionError(f"{M!r} is not a maximal skew set in C_{n}")
    for y in range(1, half):
        if (y in M) + ((y + half) in M) != 1:
            raise ConstructionError(f"{M!r} does not meet the coset {{x^{y}, x^{y + half}}} exactly once")
    if len(M) != (n - 2) // 2:
        raise ConstructionError("maximal skew set has the wrong size")


def dihedral_type1(n: int, M: Optional[Subset] = None) -> tuple[ConstructionResult, ConstructionResult]:
    """S = M u Mt in D_n, completed by t or x^(n/2) t."""
    if n < 4 or n % 2:
        raise ConstructionError("dihedral_type1 needs even n >= 4")
    if M is None:
        M = maximal_skew_with_coset_property(n)
    elif M.group.order != n or not M.group.is_abelian:
        raise ConstructionError("M must be a subset of C_n")
    _check_coset_skew(M)
    D = make_dihedral(n)
    S = Subset.from_indices(D, [m for m in M.members] + [m + n for m in M.members])
    claimed = sum_set_params(2 * n, n - 1, (n - 2) // 2)
    Z = center(D)
    outs = []
    for adj in (n, n // 2 + n):  # t and x^(n/2) t
        res = _certify(
            D, S.add(adj), claimed, "dihedral-t1", {"M": M.label_list(), "adjoined": D.labels[adj]}
        )
        _require_type(res, Z, "type1")
        outs.append(res)
    return outs[0], outs[1]


def canonical_maximal_skew(A: FiniteGroup) -> Subset:
    """For each inverse pair of elements of order > 2 keep the smaller index."""
    chosen: set[int] = set()
    for g in range(A.order):
        if A.element_order(g) > 2 and A.inv[g] not in chosen:
            chosen.add(g)
    return Subset.from_indices(A, chosen)


def generalized_dihedral_pss(A: FiniteGroup, M: Optional[Subset] = None) -> ConstructionResult:
    """S = M u Mt in Dih(A) for a maximal skew set M of an odd-order group A."""
    m = A.order
    if m % 2 == 0:
        raise ConstructionError("generalized_dihedral_pss needs a group of odd order")
    if M is None:
        M = canonical_maximal_skew(A)
    if not A.is_same(M.group):
        raise ConstructionError("M is not a subset of A")
    if not is_skew(M) or not maximal_skew_test(M):
        raise ConstructionError(f"{M!r} is not a maximal skew set")
    D = make_generalized_dihedral(A)
    S = Subset.from_indices(D, list(M.members) + [a + m for a in M.members])
    res = _certify(
        D,
        S,
        PssParams(2 * m, m - 1, (m - 3) // 2, (m - 1) // 2),
        "dihedral-t2-pss",
        {"A": A.spec, "M": M.label_list()},
    )
    if res.claimed_params.s_inv != (m - 1) // 2 or 0 in S:
        raise ConstructionError("dihedral-t2 pss is not liftable")
    res.choices["liftable"] = True
    return res


def dihedral_type2(m: int) -> ConstructionResult:
    """Lift the Dih(C_m) partial sum set to a (4m, 2m-1, m-1) sum set in Dih(C_m) x C_2."""
    if m < 3 or m % 2 == 0:
        raise ConstructionError("dihedral_type2 needs odd m >= 3")
    P = generalized_dihedral_pss(make_cyclic(m))
    lift = lift2(P.set, verify_beta=(m - 1) // 2)
    res = lift.sum_sets[0]
    if res.claimed_params.triple() != (4 * m, 2 * m - 1, m - 1):
        raise ConstructionError("dihedral_type2 produced the wrong parameters")
    res.theorem_tag = "dihedral-t2"
    res.choices.update({"pss": P.set.label_list(), "M": P.choices["M"], "n_2_mod_4": (2 * m) % 4 == 2})
    return res


def dstar_correspondence(n: int) -> tuple[FiniteGroup, FiniteGroup, list[int]]:
    """D*_n, D_n and the projection D*_n -> D*_n/Z = D_n, checked against the quotient table."""
    DS = make_dstar(n)
    Dn = make_dihedral(n)
    H, proj = quotient(DS, center(DS))
    if not np.array_equal(H.mul_table, Dn.mul_table):
        raise ConstructionError("D*_n / Z does not match the D_n table under the canonical labels")
    return DS, Dn, proj


def dstar_pss(n: int) -> ConstructionResult:
    """S* = preimage in D*_n of the Dih(C_n) partial sum set."""
    if n < 3 or n % 2 == 0:
        raise ConstructionError("dstar needs odd n >= 3")
    P = generalized_dihedral_pss(make_cyclic(n))
    DS, _, proj = dstar_correspondence(n)
    star = Subset.from_indices(DS, [g for g in range(DS.order) if proj[g] in P.set])
    return _certify(
        DS,
        star,
        PssParams(4 * n, 2 * n - 2, n - 3, n - 1),
        "dstar-pss",
        {"pss_in_Dn": P.set.label_list()},
    )


def dstar_sum_set(n: int) -> tuple[ConstructionResult, ConstructionResult]:
    star = dstar_pss(n)
    DS = star.group
    Z = center(DS)
    claimed = sum_set_params(4 * n, 2 * n - 1, n - 1)
    outs = []
    for adj in Z.members:
        res = _certify(
            DS,
            star.set.add(adj),
            claimed,
            "dstar",
            {**star.choices, "S_star": star.set.label_list(), "adjoined": DS.labels[adj]},
        )
        _require_type(res, Z, "type2")
        outs.append(res)
    return outs[0], outs[1]


# ---------------------------------------------------------------- Frobenius


def _kernel_complement(G: FiniteGroup) -> tuple[Subset, Subset]:
    md = G.metadata
    if md.kernel is None or md.complement is None:
        raise ConstructionError(f"{G!r} carries no Frobenius kernel/complement metadata")
    return Subset(G, md.kernel), Subset(G, md.complement)


def default_picks(G: FiniteGroup, t: int) -> list[int]:
    K, _ = _kernel_complement(G)
    return [k for k in K.members if k != 0][:t]


def random_picks(G: FiniteGroup, t: int, rng: random.Random) -> list[int]:
    K, _ = _kernel_complement(G)
    return sorted(rng.sample([k for k in K.members if k != 0], t))


def frobenius_coset_pss(
    G: FiniteGroup, t: int, include_H: bool = False, picks: Optional[Sequence[int]] = None
) -> ConstructionResult:
    """Union of t nontrivial left cosets kH of a regular Frobenius complement (optionally with H)."""
    K, H = _kernel_complement(G)
    h = len(H)
    if h != len(K) - 1:
        raise ConstructionError("complement does not act regularly on the kernel")
    if not 1 <= t <= len(K) - 1:
        raise ConstructionError(f"t must lie in [1, {len(K) - 1}]")
    picks = list(default_picks(G, t) if picks is None else picks)
    if len(set(picks)) != t or any(k == 0 or k not in K for k in picks):
        raise ConstructionError(f"picks must be {t} distinct nonidentity kernel elements")
    bits = 0
    for k in picks:
        bits |= H.left_translate(k).bits
    if include_H:
        bits |= H.bits
        claimed = PssParams(G.order, (t + 1) * h, t * t + h, t * t + t)
    else:
        claimed = PssParams(G.order, t * h, t * t - t, t * t)
    return _certify(
        G,
        Subset(G, bits),
        claimed,
        "frob-cosets",
        {"t": t, "include_H": include_H, "picks": [G.labels[k] for k in picks]},
    )


def aff_times_c2_sum_set(q: int) -> ConstructionResult:
    """One coset of H in Aff(q), lifted to a (2q(q-1), 2q-1, 2) sum set in Aff(q) x C_2."""
    P = frobenius_coset_pss(make_affine(q), 1)
    lift = lift2(P.set, verify_beta=1)
    res = lift.sum_sets[0]
    res.theorem_tag = "aff-x-c2"
    res.choices["coset_pss"] = P.set.label_list()
    if res.claimed_params.triple() != (2 * q * (q - 1), 2 * q - 1, 2):
        raise ConstructionError("aff-x-c2 produced the wrong parameters")
    return res


def complement_orbits(G: FiniteGroup) -> list[list[int]]:
    """Orbits of the Frobenius complement acting by conjugation on K \\ {1}."""
    K, H = _kernel_complement(G)
    rows, inv = G.rows, G.inv
    seen: set[int] = set()
    orbits = []
    for k in K.members:
        if k == 0 or k in seen:
            continue
        orb = sorted({rows[rows[inv[h]][k]][h] for h in H.members})
        seen.update(orb)
        orbits.append(orb)
    return orbits


def _embed_in_affine(q: int, d: int) -> tuple[FiniteGroup, FiniteGroup, list[int]]:
    """EA(q) x| C_d, Aff(q) and the index embedding of the former into the latter."""
    A = make_affine(q)
    G = make_frobenius_subgroup(q, d)
    step = (q - 1) // d
    emb = [(j * step) * q + b for j in range(d) for b in range(q)]
    rows_a, rows_g = A.rows, G.rows
    for x in range(G.order):
        for y in range(G.order):
            if emb[rows_g[x][y]] != rows_a[emb[x]][emb[y]]:
                raise ConstructionError("subgroup embedding is not a homomorphism")
    return G, A, emb


def frobenius_orbit_pss(
    q: int, d: int, per_orbit: int = 2, orbit_picks: Optional[Sequence[int]] = None
) -> ConstructionResult:
    """(S & G) for S a union of cosets kH in Aff(q) with ``per_orbit`` picks per C_d-orbit."""
    if prime_power(q) is None:
        raise ConstructionError(f"{q} is not a prime power")
    if d < 2 or (q - 1) % d:
        raise ConstructionError(f"d = {d} must be >= 2 and divide q - 1 = {q - 1}")
    if not 1 <= per_orbit <= d:
        raise ConstructionError(f"per_orbit must lie in [1, {d}]")
    G, A, emb = _embed_in_affine(q, d)
    orbits = complement_orbits(G)
    if orbit_picks is None:
        picks = [k for orb in orbits for k in orb[:per_orbit]]
    else:
        picks = sorted(orbit_picks)
        for orb in orbits:
            if sum(k in orb for k in picks) != per_orbit:
                raise ConstructionError(f"picks must take exactly {per_orbit} elements from each orbit")
        if len(set(picks)) != len(picks) or any(k not in {x for o in orbits for x in o} for k in picks):
            raise ConstructionError("picks must be distinct nonidentity kernel elements")
    _, HA = _kernel_complement(A)
    big = 0
    for k in picks:  # kernel indices agree between G and Aff(q)
        big |= HA.left_translate(emb[k]).bits
    inside = Subset.from_indices(G, [x for x in range(G.order) if big >> emb[x] & 1])
    t = len(picks)
    c = per_orbit
    return _certify(
        G,
        inside,
        PssParams(q * d, c * (q - 1), c * (t - 1), c * t),
        "frob-subgroup-pss",
        {
            "q": q,
            "d": d,
            "per_orbit": c,
            "picks": [G.labels[k] for k in picks],
            "orbits": [[G.labels[k] for k in o] for o in orbits],
        },
    )


def frobenius_subgroup_sum_set(q: int, d: int, orbit_picks: Optional[Sequence[int]] = None) -> ConstructionResult:
    """Two kernel elements per C_d-orbit, cosets intersected with EA(q) x| C_d, plus 1."""
    pss = frobenius_orbit_pss(q, d, 2, orbit_picks)
    G = pss.group
    res = _certify(
        G,
        pss.set.add(0),
        sum_set_params(q * d, 2 * q - 1, 4 * (q - 1) // d),
        "frob-subgroup" if d != q - 1 else "frob-subgroup-regular",
        {**pss.choices, "pss": pss.set.label_list(), "trivial": d == 2},
    )
    return res


# ---------------------------------------------------------------- Paley


def paley_skew_pss(q: int) -> ConstructionResult:
    """Nonzero squares of GF(q), q = 3 mod 4, as a subset of the additive group."""
    if prime_power(q) is None or q % 4 != 3:
        raise ConstructionError("paley_skew_pss needs a prime power q = 3 mod 4")
    E = make_elementary_abelian(q)
    S = Subset.from_indices(E, E.field.squares())  # type: ignore[attr-defined]
    if not is_skew(S):
        raise ConstructionError("quadratic residues are not skew")
    return _certify(
        E,
        S,
        PssParams(q, (q - 1) // 2, (q - 3) // 4, (q + 1) // 4),
        "paley",
        {"q": q, "residues": S.label_list()},
    )


# ---------------------------------------------------------------- registry

TAGS = (
    "lift2",
    "project2",
    "dihedral-t1",
    "dihedral-t2",
    "dstar",
    "frob-cosets",
    "aff-x-c2",
    "frob-subgroup",
    "paley",
)
