"""Exact arithmetic in the integral group ring ZG.

Coefficients are int64 vectors.  Every product is bounded in exact integer
arithmetic before it is computed, and an OverflowError is raised rather than
letting numpy wrap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Optional

import numpy as np

from .fields import is_prime
from .groups import FiniteGroup, GroupError, GroupMismatchError, Subset

if TYPE_CHECKING:
    from .regularity import PssParams

INT64_MAX = 2**63 - 1


def _bound_ok(value: int) -> None:
    if abs(value) > INT64_MAX:
        raise OverflowError(f"group ring coefficient bound {value} exceeds int64")


class GroupRingElement:
    """sum over g of coeffs[g] * g, for a fixed finite group."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: Any):
        c = np.asarray(coeffs, dtype=object if isinstance(coeffs, list) else None)
        if c.shape != (group.order,):
            raise ValueError(f"need {group.order} coefficients, got shape {c.shape}")
        for x in (int(c.max()), int(c.min())) if group.order else ():
            _bound_ok(x)
        c = np.array(c, dtype=np.int64)
        c.flags.writeable = False
        self.group = group
        self.coeffs = c

    @classmethod
    def zero(cls, group: FiniteGroup) -> "GroupRingElement":
        return cls(group, np.zeros(group.order, dtype=np.int64))

    @classmethod
    def identity(cls, group: FiniteGroup, c: int = 1) -> "GroupRingElement":
        v = np.zeros(group.order, dtype=np.int64)
        v[0] = c
        return cls(group, v)

    @classmethod
    def all_ones(cls, group: FiniteGroup, c: int = 1) -> "GroupRingElement":
        """c * G, the whole group with coefficient c."""
        _bound_ok(c)
        return cls(group, np.full(group.order, c, dtype=np.int64))

    def _check(self, other: "GroupRingElement") -> None:
        if not self.group.is_same(other.group):
            raise GroupMismatchError("group ring elements over different groups")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group.is_same(other.group) and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return add(self, other)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return add(self, scalar_mul(-1, other))

    def __mul__(self, other: Any) -> "GroupRingElement":
        if isinstance(other, GroupRingElement):
            return multiply(self, other)
        return scalar_mul(int(other), self)

    __rmul__ = lambda self, c: scalar_mul(int(c), self)  # noqa: E731

    def __pow__(self, t: int) -> "GroupRingElement":
        return power(self, t)

    def __repr__(self) -> str:
        terms = [f"{c}*{self.group.labels[g]}" for g, c in enumerate(self.coeffs.tolist()) if c]
        return " + ".join(terms) or "0"

    def support(self) -> Subset:
        return Subset.from_indices(self.group, np.nonzero(self.coeffs)[0].tolist())

    def mass(self) -> int:
        return int(sum(self.coeffs.tolist()))

    def mod(self, p: int) -> "GroupRingElement":
        return GroupRingElement(self.group, np.mod(self.coeffs, p))

    def to_json(self) -> dict[str, Any]:
        labels = self.group.labels
        return {
            "group": self.group.spec,
            "coeffs": {labels[g]: c for g, c in enumerate(self.coeffs.tolist()) if c},
        }


def from_subset(S: Subset) -> GroupRingElement:
    return GroupRingElement(S.group, S.mask.astype(np.int64))


def add(X: GroupRingElement, Y: GroupRingElement) -> GroupRingElement:
    X._check(Y)
    _bound_ok(int(np.abs(X.coeffs).max()) + int(np.abs(Y.coeffs).max()))
    return GroupRingElement(X.group, X.coeffs + Y.coeffs)


def scalar_mul(c: int, X: GroupRingElement) -> GroupRingElement:
    _bound_ok(abs(c) * int(np.abs(X.coeffs).max(initial=0)))
    return GroupRingElement(X.group, c * X.coeffs)


def multiply(X: GroupRingElement, Y: GroupRingElement) -> GroupRingElement:
    """Convolution: coefficient of g in XY is the sum over ab = g of X_a Y_b."""
    X._check(Y)
    ax = [abs(int(a)) for a in X.coeffs.tolist()]
    ay = int(np.abs(Y.coeffs).max(initial=0))
    _bound_ok(sum(ax) * ay)
    M = X.group.mul_table
    out = np.zeros(X.group.order, dtype=np.int64)
    for a in np.nonzero(X.coeffs)[0]:
        # row a maps b to ab, a permutation, so no index repeats within one add
        out[M[a]] += X.coeffs[a] * Y.coeffs
    return GroupRingElement(X.group, out)


def power(X: GroupRingElement, t: int) -> GroupRingElement:
    if t < 0:
        raise ValueError("power needs a nonnegative exponent")
    result = GroupRingElement.identity(X.group)
    for _ in range(t):
        result = multiply(result, X)
    return result


def t_power_map(X: GroupRingElement, t: int) -> GroupRingElement:
    """X^(t): move each coefficient a_g onto g^t, summing collisions."""
    G = X.group
    out = np.zeros(G.order, dtype=np.int64)
    for g in np.nonzero(X.coeffs)[0].tolist():
        out[G.power(g, t)] += X.coeffs[g]
    return GroupRingElement(G, out)


def _closed_form_scalar(v: int, k: int, n: int, m: int) -> int:
    num = k ** (2 * m) - n**m
    if num % v:
        raise ValueError(
            f"(k^{2 * m} - n^{m}) = {num} is not divisible by v = {v}; "
            "these parameters do not belong to a sum set"
        )
    return num // v


def sum_set_even_power_closed_form(params: "PssParams", m: int, group: FiniteGroup) -> GroupRingElement:
    """S^(2m) = (k^(2m) - n^m)/v * G + n^m for any (v, k, mu) sum set S.

    Depends only on the parameters, never on S itself.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    v, k, mu = params.v, params.k, params.mu
    if group.order != v:
        raise GroupError(f"group order {group.order} does not match v = {v}")
    n = k * k - mu * v
    c = _closed_form_scalar(v, k, n, m)
    _bound_ok(n**m)
    return GroupRingElement.all_ones(group, c) + GroupRingElement.identity(group, n**m)


def sum_set_odd_power_closed_form(params: "PssParams", m: int, S: Subset) -> GroupRingElement:
    """S^(2m+1) = k (k^(2m) - n^m)/v * G + n^m S."""
    if m < 1:
        raise ValueError("m must be >= 1")
    G = S.group
    v, k, mu = params.v, params.k, params.mu
    if G.order != v or len(S) != k:
        raise GroupError(f"subset of size {len(S)} in order {G.order} does not match (v, k) = ({v}, {k})")
    n = k * k - mu * v
    c = k * _closed_form_scalar(v, k, n, m)
    _bound_ok(n**m)
    return GroupRingElement.all_ones(G, c) + scalar_mul(n**m, from_subset(S))


@dataclass
class CongruenceReport:
    holds: bool
    p: int
    witness: Optional[dict[str, Any]] = None


def frobenius_congruence_check(X: GroupRingElement | Subset, p: int) -> CongruenceReport:
    """Compare X^p with X^(p) coefficientwise mod p (abelian groups only)."""
    if isinstance(X, Subset):
        X = from_subset(X)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not X.group.is_abelian:
        raise GroupError("the congruence X^p = X^(p) mod p needs an abelian group")
    lhs = np.mod(power(X, p).coeffs, p)
    rhs = np.mod(t_power_map(X, p).coeffs, p)
    diff = np.nonzero(lhs != rhs)[0]
    if len(diff) == 0:
        return CongruenceReport(True, p)
    g = int(diff[0])
    return CongruenceReport(
        False, p, {"element": X.group.labels[g], "lhs": int(lhs[g]), "rhs": int(rhs[g])}
    )
