"""Finite fields GF(q) as explicit addition/multiplication tables.

Elements are encoded as integers 0..q-1: the base-p digits of an element are
the coefficients of its polynomial representative, constant term first.
Zero is 0 and one is 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

FIELD_CAP = 256


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """Return (p, e) with q = p**e and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def is_prime(n: int) -> bool:
    pe = prime_power(n)
    return pe is not None and pe[1] == 1


# polynomials over GF(p) are coefficient tuples, constant term first, no
# trailing zeros (the zero polynomial is the empty tuple)


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mod(a: tuple[int, ...], f: tuple[int, ...], p: int) -> tuple[int, ...]:
    r = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(r) - 1 >= df and r:
        coef = (r[-1] * inv_lead) % p
        shift = len(r) - 1 - df
        for i, fc in enumerate(f):
            r[shift + i] = (r[shift + i] - coef * fc) % p
        r = list(_trim(r))
    return tuple(r)


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _int_to_poly(n: int, p: int) -> tuple[int, ...]:
    c = []
    while n:
        c.append(n % p)
        n //= p
    return tuple(c)


def _poly_to_int(c: tuple[int, ...], p: int) -> int:
    return sum(x * p**i for i, x in enumerate(c))


def is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg(f)//2."""
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            c = _int_to_poly(low, p)
            g = c + (0,) * (d - len(c)) + (1,)
            if not _poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e over GF(p).

    Coefficients are compared from the highest degree down, which is the same
    as ordering the non-leading part by its integer encoding.  The result is
    listed highest degree first.
    """
    for low in range(p**e):
        c = _int_to_poly(low, p)
        f = c + (0,) * (e - len(c)) + (1,)
        if is_irreducible(f, p):
            return tuple(reversed(f))
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldElementTable:
    q: int
    p: int
    e: int
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    irreducible_poly: Optional[tuple[int, ...]] = None  # highest degree first
    zero: int = 0
    one: int = 1

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def inv(self, a: int) -> int:
        if a == self.zero:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return int(self._inv[a])

    @cached_property
    def _neg(self) -> np.ndarray:
        return np.argmin(self.add_table, axis=1)

    @cached_property
    def _inv(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == self.one)
        inv[rows] = cols
        return inv

    def mult_order(self, a: int) -> int:
        if a == self.zero:
            raise ValueError("zero has no multiplicative order")
        x, k = a, 1
        while x != self.one:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def primitive_element(self) -> int:
        """Smallest-encoded generator of the multiplicative group."""
        for a in range(1, self.q):
            if self.mult_order(a) == self.q - 1:
                return a
        raise AssertionError("multiplicative group is not cyclic")

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = self.one
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def squares(self) -> list[int]:
        """Nonzero squares, sorted by encoding."""
        return sorted({self.mul(a, a) for a in range(1, self.q)})

    def label(self, a: int) -> str:
        return str(a)


def make_field(q: int) -> FieldElementTable:
    pe = prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    if q > FIELD_CAP:
        raise ValueError(f"field order {q} exceeds cap {FIELD_CAP}")
    p, e = pe
    idx = np.arange(q)
    if e == 1:
        add = (idx[:, None] + idx[None, :]) % p
        mul = (idx[:, None] * idx[None, :]) % p
        poly = None
    else:
        poly = smallest_irreducible(p, e)
        f = tuple(reversed(poly))  # constant term first, as the helpers expect
        digits = np.array([[(n // p**i) % p for i in range(e)] for n in range(q)])
        weights = p ** np.arange(e)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        polys = [_int_to_poly(n, p) for n in range(q)]
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(1, q):
            for b in range(a, q):
                c = _poly_to_int(_poly_mod(_poly_mul(polys[a], polys[b], p), f, p), p)
                mul[a, b] = mul[b, a] = c
    add = np.ascontiguousarray(add, dtype=np.int64)
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    add.flags.writeable = False
    mul.flags.writeable = False
    F = FieldElementTable(q=q, p=p, e=e, add_table=add, mul_table=mul, irreducible_poly=poly)
    F.primitive_element  # raises unless the nonzero elements form a cyclic group
    return F
