import json

import pytest
from hypothesis import assume, given, strategies as st

from sumsets.admissibility import (
    WARN,
    abelian_filters,
    central_nonsquares,
    check_admissible,
    coset_convolution,
    coset_profile,
    full_coset_analysis,
    index2_check,
    index3_check,
    is_square,
    muon_check,
    parameter_scan,
    sumner_butson_filter,
    two_value_analysis,
    verify_coset_equation,
)
from sumsets.constructions import aff_times_c2_sum_set
from sumsets.groups import (
    GroupError,
    Subset,
    center,
    make_cyclic,
    make_dihedral,
    normal_subgroups,
    parse_group,
)
from sumsets.search import SearchQuery, exhaustive_search
from sumsets.regularity import PssParams, classify, complement_params, profile, sum_set_params

from conftest import constructed_sum_sets, searched_sum_sets


def s831():
    return Subset.from_labels(make_dihedral(4), ["x", "xt", "t"])


def rules(rejections):
    return {r.rule for r in rejections}


def test_check_admissible_examples():
    v = check_admissible(8, 3, 1)
    assert v.admissible and v.s_inv == 2 and v.n == 1
    v = check_admissible(12, 5, 2)
    assert v.admissible and v.s_inv == 3 and v.n == 1
    v = check_admissible(10, 4, 1)
    assert not v.admissible and v.s_inv == 7
    assert rules(v.rejections) == {"parameter-equation"}


def test_check_admissible_ordering():
    for bad in [(5, 5, 1), (5, 2, 2), (5, 2, -1), (3, 4, 1)]:
        with pytest.raises(ValueError):
            check_admissible(*bad)


def test_normalization_flag():
    v = check_admissible(8, 5, 3)
    assert "normalization" in rules(v.rejections)
    assert check_admissible(8, 5, 3, normalized=False).admissible


def test_abelian_filter_examples():
    assert "odd-abelian" in rules(abelian_filters(15, 7, 3))
    for k, mu in [(4, 1), (5, 2), (6, 2)]:
        assert "odd-abelian" in rules(abelian_filters(15, k, mu))
    assert "mu-even" in rules(abelian_filters(16, 7, 3))
    # n = 2 is not a square
    assert "n-square" in rules(abelian_filters(14, 4, 1))
    assert "n-nonzero" in rules(abelian_filters(8, 4, 2))
    assert abelian_filters(16, 6, 2) == []


def test_abelian_filter_odd_flag_override():
    assert "odd-abelian" not in rules(abelian_filters(15, 7, 3, group_is_odd_order=False))
    assert "odd-abelian" in rules(abelian_filters(16, 6, 2, group_is_odd_order=True))


def test_sumner_butson_is_advisory():
    rej = sumner_butson_filter(14, 4, 1)
    assert [r.level for r in rej] == [WARN]
    assert sumner_butson_filter(8, 3, 1) == []


def test_parameter_scan_v8():
    triples = {(x.v, x.k, x.mu) for x in parameter_scan(8) if x.admissible}
    assert (8, 3, 1) in triples
    assert all(x.k <= 4 for x in parameter_scan(8))
    abel = {(x.v, x.k, x.mu) for x in parameter_scan(8, abelian=True) if x.admissible}
    assert (8, 3, 1) not in abel


def test_verdict_json():
    d = json.loads(json.dumps(check_admissible(10, 4, 1).to_json()))
    assert d["admissible"] is False and d["s_inv"] == 7
    assert d["rejections"][0]["rule"] == "parameter-equation"


def test_is_square():
    assert [n for n in range(-3, 17) if is_square(n)] == [0, 1, 4, 9, 16]


# ---------------------------------------------------------------- coset profiles


def test_coset_profile_831_center():
    S = s831()
    cp = coset_profile(S, center(S.group))
    assert cp.X == [0, 1, 1, 1]
    assert cp.quotient.order == 4
    assert sum(cp.X) == len(S)


def test_coset_profile_inside_n():
    D = make_dihedral(4)
    N = Subset.from_labels(D, ["1", "x", "x2", "x3"])
    S = Subset.from_labels(D, ["x", "x3"])
    assert coset_profile(S, N).X == [2, 0]


def test_coset_profile_requires_normal():
    D = make_dihedral(4)
    with pytest.raises(GroupError):
        coset_profile(s831(), Subset.from_labels(D, ["1", "t"]))


def test_coset_equation_831():
    S = s831()
    rep = verify_coset_equation(S, center(S.group))
    assert rep.holds
    assert rep.lhs == [3, 2, 2, 2] == rep.rhs
    assert rep.failures() == []


def test_coset_equation_degenerate_subgroups():
    S = s831()
    G = S.group
    rep = verify_coset_equation(S, Subset.trivial(G))
    assert rep.holds and rep.lhs == profile(S).product_counts.tolist()
    rep = verify_coset_equation(S, Subset.full(G))
    assert rep.holds and rep.lhs == [9] and rep.rhs == [1 * 8 + 1]


def test_coset_equation_rejects_non_sum_set():
    S = Subset.from_labels(make_cyclic(5), ["x", "x2"])
    with pytest.raises(ValueError):
        verify_coset_equation(S, Subset.trivial(S.group))


def test_coset_equation_with_wrong_params_fails():
    S = s831()
    rep = verify_coset_equation(S, center(S.group), sum_set_params(8, 3, 0))
    assert not rep.holds and 0 in rep.failures()


def test_coset_equation_json():
    S = s831()
    d = verify_coset_equation(S, center(S.group)).to_json()
    assert d["holds"] and len(d["per_coset"]) == 4
    assert d["per_coset"][0]["lhs"] == 3


# ---------------------------------------------------------------- two values


def clause(rep, tag):
    (c,) = [c for c in rep.clauses if c.clause == tag]
    return c


def test_two_value_831():
    S = s831()
    rep = two_value_analysis(S, center(S.group))
    assert rep.holds
    # M = {trivial coset} carries the value 0; l = (3 + 1)/4 = 1 is the integral branch
    c3 = clause(rep, "iii[M=low]")
    assert c3.applicable and c3.holds
    assert c3.detail["l"] == 1 and c3.detail["sign"] == +1
    # singleton M: omega = 0 and |C_{1,M}| = 1, so n = (m - l)^2
    c2 = clause(rep, "ii[M=low]")
    assert c2.detail["C_1M"] == 1 and c2.detail["rhs"] == 1


def test_two_value_uniform_requires_n_zero():
    G = make_cyclic(4)
    S = Subset.from_labels(G, ["1", "x"])
    N = Subset.from_labels(G, ["1", "x2"])
    rep = two_value_analysis(S, N, sum_set_params(4, 2, 1))
    assert [c.clause for c in rep.clauses] == ["iv"] and rep.holds
    rep = two_value_analysis(S, N, PssParams(4, 2, 0, 0))
    assert not rep.holds


def test_two_value_trivial_quotient_not_applicable():
    S = s831()
    rep = two_value_analysis(S, Subset.full(S.group))
    assert rep.holds and not rep.clauses[0].applicable


def test_two_value_rejects_three_values():
    S = aff_times_c2_sum_set(4).set
    three = [N for N in normal_subgroups(S.group) if len(set(coset_profile(S, N).X)) > 2]
    assert three
    with pytest.raises(ValueError):
        two_value_analysis(S, three[0])


def test_index2_831():
    S = s831()
    N = Subset.from_labels(S.group, ["1", "x", "x2", "x3"])
    v = index2_check(S, N)
    assert v.holds and v.detail == {"n": 1, "k": 3}
    with pytest.raises(ValueError):
        index2_check(S, center(S.group))


def test_index2_uniform_split():
    G = make_cyclic(4)
    S = Subset.from_labels(G, ["1", "x"])
    N = Subset.from_labels(G, ["1", "x2"])
    assert index2_check(S, N, sum_set_params(4, 2, 1)).holds
    # the verdict only looks at n and k: a non-square n, or n = 0 with k odd, fails
    assert not index2_check(S, N, sum_set_params(6, 3, 1)).holds
    assert not index2_check(S, N, sum_set_params(9, 3, 1)).holds


def test_index3_routing():
    G = parse_group("aff:4")
    S = exhaustive_search(SearchQuery("aff:4", (5, 5))).results[0].subset
    (N,) = [N for N in normal_subgroups(G) if 3 * len(N) == G.order]
    v = index3_check(S, N)
    assert v.holds and v.detail == {"routed": "two_value_analysis"} and v.two_value is not None
    with pytest.raises(ValueError):
        index3_check(S, Subset.trivial(G))


def test_index3_three_valued_formula():
    # hand-made profile (k/3, k/3 + x, k/3 - x) with n = -3x^2 and mu o(N) = k^2/3 + x^2
    G = make_cyclic(6)
    N = Subset.from_labels(G, ["1", "x3"])
    S = Subset.from_labels(G, ["1", "x", "x4"])  # X = (1, 2, 0), k = 3, x = 1
    p = PssParams(6, 3, 0, 2)  # n = 9 - 12 = -3, mu o(N) = 4 = 3 + 1
    v = index3_check(S, N, p)
    assert coset_profile(S, N).X == [1, 2, 0]
    assert v.holds and v.detail["x"] == 1
    assert not index3_check(S, N, PssParams(6, 3, 0, 1)).holds


def test_muon_examples():
    C4 = make_cyclic(4)
    v = muon_check(C4, Subset.trivial(C4), 1)
    assert v.active and not v.holds and sorted(v.witnesses) == ["x", "x3"]
    assert muon_check(C4, Subset.trivial(C4), 2).holds
    C3 = make_cyclic(3)
    v = muon_check(C3, Subset.trivial(C3), 1)
    assert not v.active and v.holds
    v = muon_check(C4, Subset.full(C4), 1)
    assert not v.active and v.holds


def test_central_nonsquares_odd_order_empty():
    for n in (3, 5, 7, 9):
        assert central_nonsquares(make_cyclic(n)) == []
    assert central_nonsquares(make_dihedral(3)) == []


def test_full_coset_analysis_831():
    S = s831()
    for N in normal_subgroups(S.group):
        rep = full_coset_analysis(S, N)
        assert rep["holds"], (N, rep)
        assert rep["summed_rhs"]


# ---------------------------------------------------------------- properties


def all_small_sum_sets():
    return [S for S in searched_sum_sets() + constructed_sum_sets() if S.group.order <= 24]


def test_coset_equation_every_known_sum_set():
    seen = 0
    for S in all_small_sum_sets():
        p = classify(S).params
        for N in normal_subgroups(S.group):
            rep = full_coset_analysis(S, N, p)
            assert rep["holds"], (S, N, rep)
            seen += 1
    assert seen > 1000


def test_summed_equations_reproduce_parameter_equation():
    for S in all_small_sum_sets()[::7]:
        cl = classify(S)
        p = cl.params
        for N in normal_subgroups(S.group):
            eq = verify_coset_equation(S, N, p)
            assert sum(eq.rhs) == p.mu * (S.group.order - 1) + cl.s_inv
            assert sum(coset_convolution(eq.profile)) == len(S) ** 2


@st.composite
def admissible_triples(draw):
    v = draw(st.integers(3, 200))
    k = draw(st.integers(1, v // 2))
    # mu is pinned down up to rounding by k^2 = mu(v-1) + s_inv with 0 <= s_inv <= k
    mu = draw(st.sampled_from(sorted({(k * k - s) // (v - 1) for s in range(k + 1)})))
    return v, k, mu


@given(admissible_triples())
def test_complement_admissibility(vkm):
    v, k, mu = vkm
    assume(k > mu)
    a = check_admissible(v, k, mu)
    assume(a.admissible)
    c = complement_params(sum_set_params(v, k, mu))
    b = check_admissible(c.v, c.k, c.mu, normalized=False)
    assert b.admissible
    assert b.n == a.n
    # s_inv' = (v - k) - k + s_inv: the complement of S meets its inverse in v - 2k + s_inv elements
    assert b.s_inv == v - 2 * k + a.s_inv
