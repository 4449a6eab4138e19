"""Finite groups as immutable multiplication tables.

Every group is a table over element indices 0..v-1 with the identity at 0.
Constructors fix the element enumeration so that labels and indices are
reproducible:

* cyclic:n        x^i at index i
* dihedral:n      x^i t^e at index i + n*e  (t x t = x^-1)
* dstar:n         x^i t^e at index i + n*e, e < 4  (t^-1 x t = x^-1)
* dihof:A         (a, e) at index a + |A|*e, t acting by inversion
* ea:q            additive group of GF(q), index = field encoding
* aff:q, frob:q:d the map x -> a*x + b with a = g^(j*(q-1)/d), at index j*q + b
* prod:G,H        (g, h) at index g*|H| + h
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Optional, Sequence

import numpy as np

from .fields import FieldElementTable, make_field, prime_power

ORDER_CAP = 4096
EXHAUSTIVE_ASSOC_LIMIT = 256
SUBGROUP_ENUM_LIMIT = 64


class GroupError(ValueError):
    pass


class GroupMismatchError(GroupError):
    """A subset or ring element was used with a group it does not belong to."""


@dataclass
class GroupMetadata:
    center: Optional[int] = None  # bit masks over element indices
    normal_subgroups: list[int] = field(default_factory=list)
    kernel: Optional[int] = None
    complement: Optional[int] = None
    generators: list[str] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)


class FiniteGroup:
    """Immutable finite group given by its multiplication table."""

    def __init__(
        self,
        mul_table: Sequence[Sequence[int]] | np.ndarray,
        labels: Sequence[str],
        spec: str = "",
        metadata: Optional[GroupMetadata] = None,
        check: bool = True,
    ):
        table = np.asarray(mul_table)
        v = table.shape[0]
        if v > ORDER_CAP:
            raise GroupError(f"group order {v} exceeds cap {ORDER_CAP}")
        if table.shape != (v, v) or len(labels) != v:
            raise GroupError("multiplication table must be v x v with v labels")
        table = np.ascontiguousarray(table, dtype=np.uint16)
        table.flags.writeable = False
        self.order = v
        self.mul_table = table
        self.labels = tuple(labels)
        self.spec = spec
        self.metadata = metadata or GroupMetadata()
        self.identity_index = 0
        inv = np.argmin(table, axis=1).astype(np.uint16)  # table[g, h] == 0 at h = g^-1
        inv.flags.writeable = False
        self.inverse_table = inv
        if check:
            self.validate()

    def __repr__(self) -> str:
        return f"FiniteGroup({self.spec or '?'}, order={self.order})"

    # -- fast python-level access --

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.mul_table.tolist()

    @cached_property
    def inv(self) -> list[int]:
        return self.inverse_table.tolist()

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def is_same(self, other: "FiniteGroup") -> bool:
        return self is other or (
            self.order == other.order and np.array_equal(self.mul_table, other.mul_table)
        )

    # -- validation --

    def validate(self) -> None:
        M = self.mul_table.astype(np.int64)
        v = self.order
        ar = np.arange(v)
        if not (np.array_equal(M[0], ar) and np.array_equal(M[:, 0], ar)):
            raise GroupError("index 0 is not a two-sided identity")
        if not np.all(np.sort(M, axis=1) == ar) or not np.all(np.sort(M, axis=0) == ar[:, None]):
            raise GroupError("rows and columns must be permutations (Latin square)")
        inv = self.inverse_table.astype(np.int64)
        if not np.all(M[ar, inv] == 0) or not np.all(M[inv, ar] == 0):
            raise GroupError("inverse table inconsistent")
        if v <= EXHAUSTIVE_ASSOC_LIMIT:
            for a in range(v):
                # (ab)c over all b, c against a(bc)
                if not np.array_equal(M[M[a]], M[a][M]):
                    raise GroupError(f"associativity fails for a={a}")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, v, size=(3, 100_000))
            if not np.array_equal(M[M[a, b], c], M[a, M[b, c]]):
                raise GroupError("associativity fails on random triples")
        md = self.metadata
        subs = list(md.normal_subgroups)
        for s in (md.center, md.kernel):
            if s is not None:
                subs.append(s)
        for s in subs:
            if not is_normal(self, Subset(self, s)):
                raise GroupError("metadata subgroup is not a normal subgroup")
        if md.complement is not None and not is_subgroup(self, Subset(self, md.complement)):
            raise GroupError("metadata complement is not a subgroup")

    # -- basic queries --

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = self.inv[g], -n
        n %= self.element_order(g)
        r = 0
        row = self.rows
        for _ in range(n):
            r = row[r][g]
        return r

    def element_order(self, g: int) -> int:
        return self.orders[g]

    @cached_property
    def orders(self) -> list[int]:
        out = []
        rows = self.rows
        for g in range(self.order):
            x, k = g, 1
            while x != 0:
                x = rows[x][g]
                k += 1
            out.append(k)
        return out

    def label(self, g: int) -> str:
        return self.labels[g]

    def parse_element(self, token: str) -> int:
        token = token.strip()
        if token.startswith("#"):
            i = int(token[1:])
            if not 0 <= i < self.order:
                raise GroupError(f"element index {i} out of range")
            return i
        try:
            return self.label_index[token]
        except KeyError:
            raise GroupError(f"unknown element label {token!r} in {self.spec}") from None

    def to_json(self) -> dict[str, Any]:
        md = self.metadata
        meta: dict[str, Any] = {"generators": md.generators}
        if md.center is not None:
            meta["center"] = Subset(self, md.center).label_list()
        if md.normal_subgroups:
            meta["normal_subgroups"] = [Subset(self, s).label_list() for s in md.normal_subgroups]
        if md.kernel is not None:
            meta["frobenius_kernel"] = Subset(self, md.kernel).label_list()
        if md.complement is not None:
            meta["frobenius_complement"] = Subset(self, md.complement).label_list()
        if md.notes:
            meta["notes"] = md.notes
        return {
            "spec": self.spec,
            "order": self.order,
            "labels": list(self.labels),
            "mul_table": self.rows,
            "metadata": meta,
        }


@dataclass(frozen=True)
class Subset:
    """A set of elements of one group, stored as a bit mask over indices."""

    group: FiniteGroup = field(repr=False, compare=False, hash=False)
    bits: int

    @classmethod
    def from_indices(cls, group: FiniteGroup, indices: Iterable[int]) -> "Subset":
        b = 0
        for i in indices:
            if not 0 <= i < group.order:
                raise GroupError(f"element index {i} out of range for order {group.order}")
            b |= 1 << i
        return cls(group, b)

    @classmethod
    def from_labels(cls, group: FiniteGroup, labels: Iterable[str]) -> "Subset":
        return cls.from_indices(group, (group.parse_element(s) for s in labels))

    @classmethod
    def full(cls, group: FiniteGroup) -> "Subset":
        return cls(group, (1 << group.order) - 1)

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "Subset":
        return cls(group, 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subset):
            return NotImplemented
        return self.bits == other.bits and self.group.is_same(other.group)

    def __hash__(self) -> int:
        return hash((self.group.order, self.bits))

    @cached_property
    def members(self) -> tuple[int, ...]:
        b, out, i = self.bits, [], 0
        while b:
            if b & 1:
                out.append(i)
            b >>= 1
            i += 1
        return tuple(out)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count() if hasattr(int, "bit_count") else bin(self.bits).count("1")

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, g: int) -> bool:
        return bool(self.bits >> g & 1)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def _check(self, other: "Subset") -> None:
        if not self.group.is_same(other.group):
            raise GroupMismatchError("subsets belong to different groups")

    def __or__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.group, self.bits | other.bits)

    def __and__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.group, self.bits & other.bits)

    def __sub__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.group, self.bits & ~other.bits)

    def add(self, g: int) -> "Subset":
        return Subset(self.group, self.bits | (1 << g))

    def complement(self) -> "Subset":
        return Subset(self.group, ((1 << self.group.order) - 1) & ~self.bits)

    def inverse(self) -> "Subset":
        inv = self.group.inv
        return Subset.from_indices(self.group, (inv[g] for g in self.members))

    def right_translate(self, g: int) -> "Subset":
        rows = self.group.rows
        return Subset.from_indices(self.group, (rows[s][g] for s in self.members))

    def left_translate(self, g: int) -> "Subset":
        row = self.group.rows[g]
        return Subset.from_indices(self.group, (row[s] for s in self.members))

    def label_list(self) -> list[str]:
        return [self.group.labels[g] for g in self.members]

    def __repr__(self) -> str:
        return "{" + ", ".join(self.label_list()) + "}"


def check_same_group(group: FiniteGroup, S: Subset) -> None:
    if not group.is_same(S.group):
        raise GroupMismatchError(f"subset belongs to {S.group!r}, not {group!r}")


# ---------------------------------------------------------------- queries


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(g)


def center(G: FiniteGroup) -> Subset:
    if G.metadata.center is not None:
        return Subset(G, G.metadata.center)
    M = G.mul_table
    central = np.all(M == M.T, axis=1)
    return Subset.from_indices(G, np.nonzero(central)[0].tolist())


def conjugate_subset(G: FiniteGroup, S: Subset, g: int) -> Subset:
    """g^-1 S g."""
    check_same_group(G, S)
    rows, gi = G.rows, G.inv[g]
    return Subset.from_indices(G, (rows[rows[gi][s]][g] for s in S.members))


def is_subgroup(G: FiniteGroup, N: Subset) -> bool:
    check_same_group(G, N)
    if 0 not in N:
        return False
    rows = G.rows
    mem = N.members
    return all(rows[a][b] in N for a in mem for b in mem)


def is_normal(G: FiniteGroup, N: Subset) -> bool:
    if not is_subgroup(G, N):
        return False
    return all(conjugate_subset(G, N, g) == N for g in range(G.order))


def index(G: FiniteGroup, N: Subset) -> int:
    if not is_subgroup(G, N):
        raise GroupError("not a subgroup")
    return G.order // len(N)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subset:
    gens = list(gens)
    rows = G.rows
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = rows[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return Subset.from_indices(G, seen)


def subgroups(G: FiniteGroup, normal_only: bool = False) -> list[Subset]:
    """All subgroups (or normal subgroups), sorted by order then bit mask.

    Layered closure: start from the cyclic subgroups and repeatedly join a known
    subgroup with one more cyclic subgroup until nothing new appears.
    """
    if G.order > SUBGROUP_ENUM_LIMIT:
        md = G.metadata
        known = {1, (1 << G.order) - 1, *md.normal_subgroups}
        for s in (md.center, md.kernel):
            if s is not None:
                known.add(s)
        if not normal_only and md.complement is not None:
            known.add(md.complement)
        if len(known) <= 2 and not md.normal_subgroups and md.center is None and md.kernel is None:
            raise GroupError(
                f"order {G.order} exceeds subgroup enumeration limit and no metadata is available"
            )
        found = [Subset(G, b) for b in known]
    else:
        cyclic: dict[int, int] = {}
        for g in range(G.order):
            cyclic.setdefault(generated_subgroup(G, [g]).bits, g)
        known_gens: dict[int, list[int]] = {b: [g] for b, g in cyclic.items()}
        layer = dict(known_gens)
        while layer:
            new: dict[int, list[int]] = {}
            for bits, gens in layer.items():
                for cbits, g in cyclic.items():
                    if cbits & ~bits == 0:
                        continue
                    joined = generated_subgroup(G, gens + [g]).bits
                    if joined not in known_gens and joined not in new:
                        new[joined] = gens + [g]
            known_gens.update(new)
            layer = new
        found = [Subset(G, b) for b in known_gens]
    if normal_only:
        found = [N for N in found if is_normal(G, N)]
    found.sort(key=lambda s: (len(s), s.bits))
    return found


def normal_subgroups(G: FiniteGroup) -> list[Subset]:
    return subgroups(G, normal_only=True)


def cosets(G: FiniteGroup, N: Subset) -> list[Subset]:
    """Left cosets gN ordered by their smallest element index."""
    out, covered = [], 0
    for g in range(G.order):
        if not covered >> g & 1:
            c = N.left_translate(g)
            covered |= c.bits
            out.append(c)
    return out


def quotient(G: FiniteGroup, N: Subset) -> tuple[FiniteGroup, list[int]]:
    """G/N with cosets indexed by first appearance; returns (H, projection)."""
    check_same_group(G, N)
    if not is_subgroup(G, N):
        raise GroupError("N is not a subgroup")
    if not is_normal(G, N):
        raise GroupError("N is not normal")
    cs = cosets(G, N)
    proj = [0] * G.order
    reps = []
    for i, c in enumerate(cs):
        reps.append(c.members[0])
        for g in c.members:
            proj[g] = i
    rows = G.rows
    table = [[proj[rows[a][b]] for b in reps] for a in reps]
    labels = [G.labels[r] for r in reps]
    spec = f"{G.spec}/{'{' + ','.join(N.label_list()) + '}'}" if G.spec else ""
    H = FiniteGroup(table, labels, spec=spec)
    return H, proj


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, f: Sequence[int]) -> bool:
    rg, rh = G.rows, H.rows
    return all(f[rg[a][b]] == rh[f[a]][f[b]] for a in range(G.order) for b in range(G.order))


# ---------------------------------------------------------------- builders


def _power_label(base: str, i: int) -> str:
    if i == 0:
        return ""
    return base if i == 1 else f"{base}{i}"


def _xt_label(i: int, e: int) -> str:
    lab = _power_label("x", i) + _power_label("t", e)
    return lab or "1"


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    ar = np.arange(n)
    table = (ar[:, None] + ar[None, :]) % n
    labels = [_xt_label(i, 0) for i in range(n)]
    md = GroupMetadata(center=(1 << n) - 1, generators=["x"])
    return FiniteGroup(table, labels, spec=f"cyclic:{n}", metadata=md)


def make_dihedral(n: int) -> FiniteGroup:
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")
    v = 2 * n
    table = np.empty((v, v), dtype=np.int64)
    for a in range(v):
        i, e = a % n, a // n
        for b in range(v):
            j, f = b % n, b // n
            table[a, b] = (i + (j if e == 0 else -j)) % n + n * ((e + f) % 2)
    labels = [_xt_label(a % n, a // n) for a in range(v)]
    z = 1 | (1 << (n // 2)) if n % 2 == 0 else 1
    rot = (1 << n) - 1
    md = GroupMetadata(center=z, normal_subgroups=[rot], generators=["x", "t"])
    return FiniteGroup(table, labels, spec=f"dihedral:{n}", metadata=md)


def make_dstar(n: int) -> FiniteGroup:
    """<x, t | x^n = t^4 = 1, t^-1 x t = x^-1> for odd n."""
    if n < 3 or n % 2 == 0:
        raise GroupError("dstar needs odd n >= 3")
    v = 4 * n
    table = np.empty((v, v), dtype=np.int64)
    for a in range(v):
        i, e = a % n, a // n
        for b in range(v):
            j, f = b % n, b // n
            table[a, b] = (i + (j if e % 2 == 0 else -j)) % n + n * ((e + f) % 4)
    labels = [_xt_label(a % n, a // n) for a in range(v)]
    md = GroupMetadata(
        center=1 | (1 << (2 * n)),
        normal_subgroups=[(1 << n) - 1],
        generators=["x", "t"],
        notes={"quotient_by_center": f"dihedral:{n}"},
    )
    return FiniteGroup(table, labels, spec=f"dstar:{n}", metadata=md)


def make_generalized_dihedral(A: FiniteGroup) -> FiniteGroup:
    """A x| {1, t} with t acting by inversion; A must be abelian."""
    if not A.is_abelian:
        raise GroupError("generalized dihedral group needs an abelian group")
    m = A.order
    v = 2 * m
    rows, inv = A.rows, A.inv
    table = np.empty((v, v), dtype=np.int64)
    for a in range(v):
        x, e = a % m, a // m
        for b in range(v):
            y, f = b % m, b // m
            table[a, b] = rows[x][y if e == 0 else inv[y]] + m * ((e + f) % 2)
    labels = list(A.labels) + [("" if l == "1" else l) + "t" for l in A.labels]
    md = GroupMetadata(normal_subgroups=[(1 << m) - 1], generators=[*A.metadata.generators, "t"])
    return FiniteGroup(table, labels, spec=f"dihof:{A.spec}", metadata=md)


def make_elementary_abelian(q: int, F: Optional[FieldElementTable] = None) -> FiniteGroup:
    F = F or make_field(q)
    labels = [F.label(a) for a in range(q)]
    md = GroupMetadata(center=(1 << q) - 1, generators=[f"GF({q})+"])
    G = FiniteGroup(F.add_table, labels, spec=f"ea:{q}", metadata=md)
    G.field = F  # type: ignore[attr-defined]
    return G


def _frobenius(q: int, d: int, spec: str) -> FiniteGroup:
    F = make_field(q)
    g = F.primitive_element
    step = (q - 1) // d
    scalars = [F.power(g, j * step) for j in range(d)]
    pos = {a: j for j, a in enumerate(scalars)}
    v = q * d
    if v > ORDER_CAP:
        raise GroupError(f"group order {v} exceeds cap {ORDER_CAP}")
    A, Mf = F.add_table, F.mul_table
    table = np.empty((v, v), dtype=np.int64)
    for i1 in range(d):
        a1 = scalars[i1]
        for b1 in range(q):
            r = i1 * q + b1
            for i2 in range(d):
                a = pos[int(Mf[a1, scalars[i2]])]
                # (a1 x + b1) o (a2 x + b2) = a1 a2 x + (a1 b2 + b1)
                table[r, i2 * q : (i2 + 1) * q] = a * q + A[Mf[a1, :], b1]
    labels = [f"{scalars[j]}x+{b}" for j in range(d) for b in range(q)]
    kernel = (1 << q) - 1
    complement = sum(1 << (j * q) for j in range(d))
    md = GroupMetadata(
        normal_subgroups=[kernel],
        kernel=kernel,
        complement=complement,
        generators=[f"x+1", f"{F.power(g, step)}x"],
        notes={"field_q": q, "complement_order": d, "primitive_element": g},
    )
    G = FiniteGroup(table, labels, spec=spec, metadata=md)
    G.field = F  # type: ignore[attr-defined]
    return G


def make_affine(q: int) -> FiniteGroup:
    if q < 3 or prime_power(q) is None:
        raise GroupError(f"Aff(q) needs a prime power q >= 3, got {q}")
    return _frobenius(q, q - 1, f"aff:{q}")


def make_frobenius_subgroup(q: int, d: int) -> FiniteGroup:
    if prime_power(q) is None:
        raise GroupError(f"{q} is not a prime power")
    if d < 2:
        raise GroupError("complement order d must be >= 2 (d = 1 leaves only the kernel)")
    if (q - 1) % d:
        raise GroupError(f"d={d} does not divide q-1={q - 1}")
    return _frobenius(q, d, f"frob:{q}:{d}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    vg, vh = G.order, H.order
    v = vg * vh
    if v > ORDER_CAP:
        raise GroupError(f"group order {v} exceeds cap {ORDER_CAP}")
    MG = G.mul_table.astype(np.int64)
    MH = H.mul_table.astype(np.int64)
    table = (MG[:, None, :, None] * vh + MH[None, :, None, :]).reshape(v, v)
    labels = [f"({a};{b})" for a in G.labels for b in H.labels]

    def lift(bg: int, bh: int) -> int:
        sg = Subset(G, bg).members
        sh = Subset(H, bh).members
        return sum(1 << (a * vh + b) for a in sg for b in sh)

    zg = center(G).bits if vg <= SUBGROUP_ENUM_LIMIT or G.metadata.center is not None else None
    zh = center(H).bits if vh <= SUBGROUP_ENUM_LIMIT or H.metadata.center is not None else None
    normals = []
    for n in G.metadata.normal_subgroups + ([zg] if zg else []):
        normals.append(lift(n, 1))
    for n in H.metadata.normal_subgroups + ([zh] if zh else []):
        normals.append(lift(1, n))
    normals.append(lift((1 << vg) - 1, 1))
    normals.append(lift(1, (1 << vh) - 1))
    md = GroupMetadata(
        center=lift(zg, zh) if zg is not None and zh is not None else None,
        normal_subgroups=sorted(set(normals)),
        generators=[f"({g};1)" for g in G.metadata.generators] + [f"(1;{h})" for h in H.metadata.generators],
    )
    return FiniteGroup(table, labels, spec=f"prod:{_wrap(G.spec)},{_wrap(H.spec)}", metadata=md)


def _wrap(spec: str) -> str:
    return f"({spec})" if "," in spec else spec


# ---------------------------------------------------------------- spec DSL


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _strip_parens(s: str) -> str:
    s = s.strip()
    while s.startswith("(") and s.endswith(")"):
        inner = s[1:-1]
        depth = 0
        for ch in inner:
            depth += ch == "("
            depth -= ch == ")"
            if depth < 0:
                return s
        s = inner.strip()
    return s


def parse_group(spec: str) -> FiniteGroup:
    """Build a group from the spec DSL, e.g. ``prod:aff:3,cyclic:2``."""
    spec = _strip_parens(spec)
    kind, _, rest = spec.partition(":")
    try:
        if kind == "cyclic":
            return make_cyclic(int(rest))
        if kind == "dihedral":
            return make_dihedral(int(rest))
        if kind == "dstar":
            return make_dstar(int(rest))
        if kind == "ea":
            return make_elementary_abelian(int(rest))
        if kind == "aff":
            return make_affine(int(rest))
        if kind == "frob":
            q, d = rest.split(":")
            return make_frobenius_subgroup(int(q), int(d))
        if kind == "dihof":
            return make_generalized_dihedral(parse_group(rest))
        if kind == "prod":
            parts = [p for p in _split_top(rest) if p.strip()]
            if len(parts) < 2:
                raise GroupError("prod needs at least two factors")
            G = parse_group(parts[0])
            for p in parts[1:]:
                G = direct_product(G, parse_group(p))
            return G
    except ValueError as exc:
        if isinstance(exc, GroupError):
            raise
        raise GroupError(f"bad group spec {spec!r}: {exc}") from None
    raise GroupError(f"unknown group kind {kind!r} in {spec!r}")


def group_to_json(G: FiniteGroup) -> str:
    return json.dumps(G.to_json(), sort_keys=True)


def random_subset(G: FiniteGroup, rng: random.Random, size: Optional[int] = None) -> Subset:
    if size is None:
        return Subset(G, rng.getrandbits(G.order))
    return Subset.from_indices(G, rng.sample(range(G.order), size))


def all_subsets(G: FiniteGroup) -> Iterator[Subset]:
    for b in range(1 << G.order):
        yield Subset(G, b)


def subsets_of_size(G: FiniteGroup, k: int) -> Iterator[Subset]:
    for c in itertools.combinations(range(G.order), k):
        yield Subset.from_indices(G, c)
