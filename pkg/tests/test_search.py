import itertools
import json

import pytest

from sumsets.constructions import dihedral_type1, dihedral_type2, dstar_sum_set, frobenius_subgroup_sum_set
from sumsets.groups import Subset, make_cyclic, make_dihedral, parse_group
from sumsets.regularity import classify, is_trivial
from sumsets.search import (
    SUITES,
    SearchError,
    SearchQuery,
    enumerate_maximal_skew,
    exhaustive_search,
    mu_bounds,
    property_suite,
)

from conftest import brute_is_sum_set


def bits_of(rep):
    return [f.subset.bits for f in rep.results]


def brute_sum_sets(G, k_lo, k_hi):
    """Nontrivial sum sets of each size, by testing every subset against the definition."""
    out = []
    for k in range(k_lo, k_hi + 1):
        for combo in itertools.combinations(range(G.order), k):
            if brute_is_sum_set(G, combo):
                S = Subset.from_indices(G, combo)
                if not is_trivial(S):
                    out.append(S.bits)
    return sorted(out, key=lambda b: (bin(b).count("1"), b))


def test_cyclic5_has_none():
    rep = exhaustive_search(SearchQuery("cyclic:5"))
    assert rep.exhaustive and rep.results == [] and rep.counts == {}


def test_d4_k3_contains_known_set():
    rep = exhaustive_search(SearchQuery("dihedral:4", (3, 3)))
    D = rep.group
    assert Subset.from_labels(D, ["x", "xt", "t"]) in [f.subset for f in rep.results]
    assert rep.counts == {"(8,3,1)": 8}


def test_cyclic4_sets_reversible():
    rep = exhaustive_search(SearchQuery("cyclic:4", (1, 2), include_trivial=True))
    assert rep.results
    for f in rep.results:
        assert classify(f.subset).is_reversible


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:4", "cyclic:8", "prod:cyclic:2,cyclic:4", "dihedral:5", "aff:4", "dstar:3"])
def test_search_matches_brute_force(spec):
    G = parse_group(spec)
    hi = G.order // 2
    rep = exhaustive_search(SearchQuery(spec, (1, hi)))
    assert bits_of(rep) == brute_sum_sets(G, 1, hi)


def test_search_full_range_with_trivial():
    G = make_dihedral(3)
    rep = exhaustive_search(SearchQuery("dihedral:3", (0, 6), include_trivial=True))
    want = [
        S.bits
        for k in range(0, 7)
        for S in map(lambda c: Subset.from_indices(G, c), itertools.combinations(range(6), k))
        if brute_is_sum_set(G, S.members)
    ]
    got = set(bits_of(rep))
    # k = 0 is never scanned, the empty set is not a leaf
    assert got == set(want) - {0}
    assert rep.trivial_count == sum(1 for b in got if is_trivial(Subset(G, b)))


def test_pss_mode_finds_paley():
    rep = exhaustive_search(SearchQuery("ea:7", (3, 3), mode="pss"))
    assert "(7,3,1,2)" in rep.counts
    assert Subset.from_indices(rep.group, [1, 2, 4]) in [f.subset for f in rep.results]


def test_maximal_skew_counts():
    assert len(enumerate_maximal_skew(make_cyclic(7))) == 8
    assert all(len(S) == 3 for S in enumerate_maximal_skew(make_cyclic(7)))
    C4 = make_cyclic(4)
    assert [S.label_list() for S in enumerate_maximal_skew(C4)] == [["x"], ["x3"]]
    assert [len(S) for S in enumerate_maximal_skew(make_cyclic(2))] == [0]
    rep = exhaustive_search(SearchQuery("cyclic:7", (0, 7), mode="maximal_skew"))
    assert len(rep.results) == 8


def test_maximal_skew_order_cap():
    with pytest.raises(SearchError):
        enumerate_maximal_skew(make_cyclic(25))


def test_thread_invariance():
    a = exhaustive_search(SearchQuery("dihedral:6", (5, 5)))
    b = exhaustive_search(SearchQuery("dihedral:6", (5, 5), threads=3))
    assert bits_of(a) == bits_of(b) and a.counts == b.counts and b.exhaustive
    assert a.to_json() == exhaustive_search(SearchQuery("dihedral:6", (5, 5))).to_json()


def test_complement_duality():
    rep = exhaustive_search(SearchQuery("dihedral:6", (5, 7)))
    by_k = {}
    for f in rep.results:
        by_k.setdefault(len(f.subset), set()).add(f.subset.bits)
    comp = {f.subset.complement().bits for f in rep.results if len(f.subset) == 5}
    assert comp == by_k[7]
    assert rep.counts == {"(12,5,2)": 24, "(12,7,4)": 24}


@pytest.mark.parametrize("spec", ["prod:cyclic:4,cyclic:4", "prod:cyclic:2,cyclic:2,cyclic:2", "prod:cyclic:2,cyclic:6"])
def test_abelian_mu_even(spec):
    rep = exhaustive_search(SearchQuery(spec))
    for f in rep.results:
        assert f.params.mu % 2 == 0


@pytest.mark.parametrize(
    "spec,sets",
    [
        ("dihedral:4", lambda: dihedral_type1(4)),
        ("dihedral:6", lambda: dihedral_type1(6)),
        ("dstar:3", lambda: dstar_sum_set(3)),
        ("dihedral:8", lambda: dihedral_type1(8)),
        ("aff:5", lambda: [frobenius_subgroup_sum_set(5, 4)]),
    ],
)
def test_constructions_rediscovered(spec, sets):
    outs = list(sets())
    k = len(outs[0].set)
    rep = exhaustive_search(SearchQuery(spec, (k, k)))
    found = {f.subset for f in rep.results}
    for res in outs:
        assert res.set in found


def test_dihedral_type2_rediscovered_up_to_relabelling():
    res = dihedral_type2(3)
    rep = exhaustive_search(SearchQuery(res.group.spec, (5, 5)))
    assert res.set in {f.subset for f in rep.results}


def closure(S, central):
    seen, todo = {S.bits}, [S]
    while todo:
        T = todo.pop()
        for U in [T.complement(), T.inverse()] + [T.right_translate(z) for z in central]:
            if U.bits not in seen:
                seen.add(U.bits)
                todo.append(U)
    return seen


def test_dedup_keeps_one_per_class():
    flags = frozenset({"complement", "inversion", "central_translate"})
    full = exhaustive_search(SearchQuery("dihedral:4", (3, 5)))
    dd = exhaustive_search(SearchQuery("dihedral:4", (3, 5), dedup=flags))
    assert dd.raw_counts == full.counts
    central = [full.group.parse_element("x2")]
    kept = [f.subset for f in dd.results]
    for i, S in enumerate(kept):
        orbit = closure(S, central)
        assert S.bits == min(orbit, key=lambda b: (bin(b).count("1"), b))
        assert not any(T.bits in orbit for T in kept[i + 1 :])
    for f in full.results:
        assert closure(f.subset, central) & {S.bits for S in kept}


def test_budget_marks_non_exhaustive():
    rep = exhaustive_search(SearchQuery("dihedral:12", (11, 11), budget_seconds=0.05))
    assert not rep.exhaustive and rep.stop_reason == "budget"


def test_max_results():
    rep = exhaustive_search(SearchQuery("dihedral:6", (5, 5), max_results=3))
    assert len(rep.results) == 3 and not rep.exhaustive and rep.stop_reason == "max_results"


def test_query_validation():
    with pytest.raises(SearchError):
        SearchQuery("cyclic:4", mode="bogus")
    with pytest.raises(SearchError):
        SearchQuery("cyclic:4", dedup=frozenset({"nope"}))
    with pytest.raises(SearchError):
        SearchQuery("cyclic:4", threads=0)
    with pytest.raises(SearchError):
        exhaustive_search(SearchQuery("cyclic:4", (3, 9)))
    with pytest.raises(SearchError):
        exhaustive_search(SearchQuery("cyclic:25"))


def test_mu_bounds():
    assert mu_bounds(8, 3) == (1, 1)
    assert mu_bounds(12, 5) == (2, 2)
    lo, hi = mu_bounds(24, 11)
    assert lo <= 5 <= hi


def test_report_json_has_no_stats():
    rep = exhaustive_search(SearchQuery("dihedral:4", (3, 3)))
    d = json.loads(json.dumps(rep.to_json()))
    assert "elapsed" not in d and "nodes" not in d and d["n_results"] == 8
    assert {"elapsed", "nodes"} <= set(rep.to_json(with_stats=True))


# ---------------------------------------------------------------- suites


def test_suites_pass():
    assert property_suite("no-cyclic", [f"cyclic:{n}" for n in range(3, 13)]).passed
    assert property_suite("abelian-reversible", ["prod:cyclic:4,cyclic:4"]).passed
    assert property_suite("abelian-is-ds", ["prod:cyclic:4,cyclic:4", "prod:cyclic:2,cyclic:4"]).passed
    rep = property_suite("higher-order", ["dihedral:4"])
    assert rep.passed and rep.checked == 8
    assert property_suite("rdsss", ["dihedral:4", "cyclic:6"]).passed
    assert property_suite("coset-eq", ["dihedral:4", "dihedral:6", "dihedral:8", "dihedral:10"]).passed
    assert property_suite("shds-pss", ["7", "ea:11", "19"]).passed


def test_suite_extra_sets():
    extra = [r.set for r in dihedral_type1(12)]
    rep = property_suite("higher-order", [], extra_sets=extra)
    assert rep.passed and rep.checked == 2


def test_suite_errors():
    with pytest.raises(SearchError):
        property_suite("bogus", ["cyclic:4"])
    with pytest.raises(SearchError):
        property_suite("no-cyclic", ["dihedral:4"])
    with pytest.raises(SearchError):
        property_suite("abelian-is-ds", ["dihedral:4"])
    with pytest.raises(SearchError):
        property_suite("rdsss", ["dihedral:8"])


def test_suite_names():
    assert set(SUITES) == {"abelian-reversible", "abelian-is-ds", "no-cyclic", "higher-order", "rdsss", "coset-eq", "shds-pss"}
