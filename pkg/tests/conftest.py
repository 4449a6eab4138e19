import functools
import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def brute_counts(G, members):
    """Ordered-pair product and quotient counts straight from the definition."""
    prod = [0] * G.order
    quot = [0] * G.order
    for x, y in itertools.product(members, repeat=2):
        prod[G.mul(x, y)] += 1
        quot[G.mul(x, G.inv[y])] += 1
    return prod, quot


def brute_is_sum_set(G, members):
    prod, _ = brute_counts(G, members)
    return len(set(prod[1:])) <= 1


@pytest.fixture
def oracle():
    return brute_counts


CORPUS_GROUPS = [
    "dihedral:4",
    "prod:cyclic:2,cyclic:4",
    "dihedral:5",
    "dihedral:6",
    "dstar:3",
    "aff:4",
    "dihedral:8",
    "prod:cyclic:4,cyclic:4",
    "prod:cyclic:2,dihedral:4",
    "dihedral:9",
    "dihedral:10",
    "aff:5",
    "dstar:5",
    "dihedral:12",
    "prod:aff:4,cyclic:2",
]


@functools.lru_cache(maxsize=None)
def searched_sum_sets():
    """Every sum set with k <= min(v/2, 9) in the corpus groups, by exhaustive search."""
    from sumsets.groups import parse_group
    from sumsets.search import SearchQuery, exhaustive_search

    out = []
    for spec in CORPUS_GROUPS:
        v = parse_group(spec).order
        rep = exhaustive_search(SearchQuery(spec, (1, min(v // 2, 9))))
        assert rep.exhaustive
        out.extend(f.subset for f in rep.results)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def constructed_sum_sets(max_v=48):
    from sumsets import constructions as C

    out = []
    for n in range(4, 25, 2):
        out.extend(r.set for r in C.dihedral_type1(n))
    for m in range(3, 13, 2):
        out.append(C.dihedral_type2(m).set)
    for n in range(3, 13, 2):
        out.extend(r.set for r in C.dstar_sum_set(n))
    for q in (3, 4, 5):
        out.append(C.aff_times_c2_sum_set(q).set)
    for q, d in ((5, 4), (7, 3), (7, 6), (9, 4)):
        out.append(C.frobenius_subgroup_sum_set(q, d).set)
    return tuple(S for S in out if S.group.order <= max_v)
