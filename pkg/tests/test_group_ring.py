import itertools
import json
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sumsets.constructions import dihedral_type1, dstar_sum_set
from sumsets.group_ring import (
    GroupRingElement,
    add,
    frobenius_congruence_check,
    from_subset,
    multiply,
    power,
    scalar_mul,
    sum_set_even_power_closed_form,
    sum_set_odd_power_closed_form,
    t_power_map,
)
from sumsets.groups import GroupError, GroupMismatchError, Subset, make_cyclic, make_dihedral, parse_group
from sumsets.regularity import sum_set_params

from conftest import brute_counts


def naive_product(X, Y):
    G = X.group
    out = [0] * G.order
    for a, b in itertools.product(range(G.order), repeat=2):
        out[G.mul(a, b)] += int(X.coeffs[a]) * int(Y.coeffs[b])
    return out


def the_831_set():
    D = make_dihedral(4)
    return Subset.from_labels(D, ["x", "xt", "t"])


def test_from_subset_edges():
    G = make_dihedral(3)
    assert from_subset(Subset(G, 0)) == GroupRingElement.zero(G)
    assert from_subset(Subset.full(G)) == GroupRingElement.all_ones(G)
    X = from_subset(Subset.from_labels(G, ["x", "t"]))
    assert sorted(X.coeffs.tolist()) == [0, 0, 0, 0, 1, 1]
    assert X.support() == Subset.from_labels(G, ["x", "t"])


def test_square_counts_products():
    S = the_831_set()
    X = from_subset(S)
    prod, _ = brute_counts(S.group, S.members)
    assert (X * X).coeffs.tolist() == prod


def test_g_times_s():
    G = make_dihedral(5)
    rng = random.Random(1)
    for _ in range(20):
        S = Subset(G, rng.getrandbits(G.order))
        all_g = GroupRingElement.all_ones(G)
        assert all_g * from_subset(S) == GroupRingElement.all_ones(G, len(S))
        assert from_subset(S) * all_g == GroupRingElement.all_ones(G, len(S))


def test_power_zero_is_identity():
    G = make_cyclic(5)
    X = from_subset(Subset.from_labels(G, ["x", "x3"]))
    assert power(X, 0) == GroupRingElement.identity(G)
    with pytest.raises(ValueError):
        power(X, -1)


def test_t_power_map_examples():
    G = make_cyclic(4)
    X = GroupRingElement.all_ones(G)
    assert t_power_map(X, 1) == X
    assert t_power_map(X, 2).coeffs.tolist() == [2, 0, 2, 0]
    D = make_dihedral(5)
    S = Subset.from_labels(D, ["x", "x2t", "x3"])
    assert t_power_map(from_subset(S), -1) == from_subset(S.inverse())


def test_even_closed_form_examples():
    S = the_831_set()
    G = S.group
    p = sum_set_params(8, 3, 1)
    want = GroupRingElement.all_ones(G) + GroupRingElement.identity(G)
    assert sum_set_even_power_closed_form(p, 1, G) == want
    assert power(from_subset(S), 2) == want
    # S^4 = 10G + 1
    four = sum_set_even_power_closed_form(p, 2, G)
    assert four == GroupRingElement.all_ones(G, 10) + GroupRingElement.identity(G)
    assert power(from_subset(S), 4) == four


def test_even_closed_form_m1_is_mu_g_plus_n():
    G = make_dihedral(6)
    p = sum_set_params(12, 5, 2)
    got = sum_set_even_power_closed_form(p, 1, G)
    assert got == GroupRingElement.all_ones(G, 2) + GroupRingElement.identity(G, 1)


def test_even_closed_form_n_zero():
    G = make_cyclic(4)
    p = sum_set_params(4, 2, 1)  # n = 4 - 4 = 0
    assert sum_set_even_power_closed_form(p, 2, G) == GroupRingElement.all_ones(G, 16 // 4)


def test_odd_closed_form_example():
    S = the_831_set()
    want = GroupRingElement.all_ones(S.group, 3) + from_subset(S)
    assert sum_set_odd_power_closed_form(sum_set_params(8, 3, 1), 1, S) == want
    assert power(from_subset(S), 3) == want


def test_odd_closed_form_n_zero_ignores_s():
    G = make_cyclic(4)
    p = sum_set_params(4, 2, 1)
    a = sum_set_odd_power_closed_form(p, 1, Subset.from_labels(G, ["1", "x"]))
    b = sum_set_odd_power_closed_form(p, 1, Subset.from_labels(G, ["x2", "x3"]))
    assert a == b == GroupRingElement.all_ones(G, 2)


@given(st.integers(2, 60), st.integers(1, 30), st.integers(0, 20), st.integers(1, 4))
def test_closed_form_always_divisible(v, k, mu, m):
    # k^2m - n^m is a multiple of k^2 - n = mu v, so the scalar is always integral
    G = make_cyclic(v)
    X = sum_set_even_power_closed_form(sum_set_params(v, k, mu), m, G)
    n = k * k - mu * v
    assert X.coeffs[1 % v] * v == k ** (2 * m) - n**m or v == 1


def test_closed_form_order_mismatch():
    with pytest.raises(GroupError):
        sum_set_even_power_closed_form(sum_set_params(8, 3, 1), 1, make_cyclic(7))
    with pytest.raises(ValueError):
        sum_set_even_power_closed_form(sum_set_params(8, 3, 1), 0, make_dihedral(4))


@pytest.mark.parametrize("maker,arg", [(dihedral_type1, 6), (dihedral_type1, 8), (dstar_sum_set, 3), (dstar_sum_set, 5)])
def test_closed_forms_against_direct_powers(maker, arg):
    res = maker(arg)[0]
    S, p = res.set, res.claimed_params
    X = from_subset(S)
    P = X
    for e in range(2, 8):
        P = P * X
        m = e // 2
        if e % 2 == 0:
            assert P == sum_set_even_power_closed_form(p, m, S.group)
        else:
            assert P == sum_set_odd_power_closed_form(p, m, S)


def test_frobenius_congruence_examples():
    C6 = make_cyclic(6)
    for bits in range(1 << 6):
        assert frobenius_congruence_check(Subset(C6, bits), 5).holds
    C5 = make_cyclic(5)
    S = Subset.from_labels(C5, ["x", "x2"])
    rep = frobenius_congruence_check(S, 3)
    assert rep.holds
    lhs = power(from_subset(S), 3).mod(3)
    # x^3 + x^6 = x^3 + x
    want = GroupRingElement(C5, [0, 1, 0, 1, 0])
    assert lhs == want
    for g in range(5):
        assert frobenius_congruence_check(Subset.from_indices(C5, [g]), 7).holds


def test_frobenius_congruence_errors():
    with pytest.raises(GroupError):
        frobenius_congruence_check(Subset.from_labels(make_dihedral(3), ["x"]), 3)
    with pytest.raises(ValueError):
        frobenius_congruence_check(Subset.from_labels(make_cyclic(3), ["x"]), 4)


def test_congruence_report_fields():
    G = make_cyclic(4)
    rep = frobenius_congruence_check(GroupRingElement(G, [0, 2, -1, 5]), 3)
    assert rep.holds and rep.p == 3 and rep.witness is None


@pytest.mark.parametrize("spec", ["cyclic:4", "cyclic:6", "prod:cyclic:2,cyclic:2", "prod:cyclic:2,cyclic:4", "cyclic:7"])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_congruence_all_subsets(spec, p):
    G = parse_group(spec)
    for bits in range(1 << G.order):
        assert frobenius_congruence_check(Subset(G, bits), p).holds


def test_overflow_detected():
    G = make_cyclic(2)
    big = GroupRingElement(G, [2**40, 2**40])
    with pytest.raises(OverflowError):
        multiply(big, big)
    with pytest.raises(OverflowError):
        scalar_mul(2**40, big)
    with pytest.raises(OverflowError):
        GroupRingElement(G, [2**70, 0])


def test_group_mismatch():
    A = GroupRingElement.identity(make_cyclic(3))
    B = GroupRingElement.identity(make_cyclic(4))
    with pytest.raises(GroupMismatchError):
        add(A, B)
    with pytest.raises(GroupMismatchError):
        multiply(A, B)


def test_json_sparse():
    S = the_831_set()
    d = json.loads(json.dumps(from_subset(S).to_json()))
    assert d == {"group": "dihedral:4", "coeffs": {"x": 1, "t": 1, "xt": 1}}


# ---------------------------------------------------------------- properties


RING_GROUPS = ["dihedral:3", "dstar:3", "prod:cyclic:2,cyclic:3"]


@pytest.mark.parametrize("spec", RING_GROUPS)
def test_ring_axioms_random_triples(spec):
    G = parse_group(spec)
    rng = np.random.default_rng(7)
    for _ in range(10_000 // len(RING_GROUPS)):
        X, Y, Z = (GroupRingElement(G, rng.integers(-3, 4, G.order)) for _ in range(3))
        assert (X * Y) * Z == X * (Y * Z)
        assert X * (Y + Z) == X * Y + X * Z
        assert (X + Y) * Z == X * Z + Y * Z


coeff_lists = st.lists(st.integers(-50, 50), min_size=8, max_size=8)


@given(coeff_lists, coeff_lists)
def test_multiply_matches_naive(a, b):
    G = make_dihedral(4)
    X, Y = GroupRingElement(G, a), GroupRingElement(G, b)
    assert (X * Y).coeffs.tolist() == naive_product(X, Y)


@given(coeff_lists, st.integers(-9, 9))
def test_t_power_preserves_mass(a, t):
    G = make_dihedral(4)
    X = GroupRingElement(G, a)
    assert t_power_map(X, t).mass() == X.mass()


@given(st.integers(0, 255))
def test_support_round_trip(bits):
    G = make_dihedral(4)
    S = Subset(G, bits)
    assert from_subset(S).support() == S
