"""Small finite fields F_q as lookup tables.

An element is its index 0..q-1: the base-p digits of the index are the
coefficients (constant term first) of its residue modulo the field's
irreducible polynomial. Index 0 is zero and index 1 is one.

The array methods on ``Field`` accept numpy integer arrays of indices and
broadcast like ordinary numpy arithmetic.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

MAX_Q = 64


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _poly_has_root(coeffs: tuple[int, ...], p: int) -> bool:
    return any(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j, b in enumerate(m):
                a[i - dm + j] = (a[i - dm + j] - c * b) % p
    return a[:dm] if len(a) >= dm else a + [0] * (dm - len(a))


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 divides."""
    d = len(coeffs) - 1
    if d == 1:
        return True
    for fd in range(1, d // 2 + 1):
        for low in product(range(p), repeat=fd):
            factor = tuple(low) + (1,)
            if not any(_poly_mod(list(coeffs), factor, p)):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k, comparing coefficients from the top."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        low = tuple((code // p**i) % p for i in range(k))
        coeffs = low + (1,)
        if low[0] and not _poly_has_root(coeffs, p) and is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


class Field:
    def __init__(self, q: int, max_q: int = MAX_Q):
        if q > max_q:
            raise ValueError(f"q={q} exceeds the supported bound {max_q}")
        p, k = _factor_prime_power(q)
        self.p, self.k, self.q = p, k, q
        self.modulus = least_irreducible(p, k)
        self.is_prime = k == 1

        digits = np.array([[(e // p**i) % p for i in range(k)] for e in range(q)])
        weights = p ** np.arange(k)
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_table = ((-digits) % p) @ weights

        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * k - 1)
                for i, da in enumerate(digits[a]):
                    if da:
                        for j, db in enumerate(digits[b]):
                            prod[i + j] += int(da) * int(db)
                red = _poly_mod([c % p for c in prod], self.modulus, p)
                mul[a, b] = mul[b, a] = int(np.dot(red, weights))
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv_table = inv
        for t in (self.add_table, self.neg_table, self.mul_table, self.inv_table):
            t.setflags(write=False)

    def __repr__(self):
        return f"Field(q={self.q})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self):
        return hash(("Field", self.q))

    def elements(self) -> list[int]:
        return list(range(self.q))

    def units(self) -> list[int]:
        return list(range(1, self.q))

    def primitive_element(self) -> int:
        """Smallest index generating the multiplicative group."""
        for g in range(1, self.q):
            x, seen = 1, set()
            for _ in range(self.q - 1):
                x = int(self.mul_table[x, g])
                seen.add(x)
            if len(seen) == self.q - 1:
                return g
        raise AssertionError("multiplicative group is not cyclic")

    # array arithmetic; prime fields skip the tables

    def add(self, a, b):
        if self.p == 2:
            # base-2 digits add without carries
            return np.bitwise_xor(a, b)
        if self.is_prime:
            return (np.asarray(a) + b) % self.p
        return self.add_table[a, b]

    def neg(self, a):
        if self.is_prime:
            return (-np.asarray(a)) % self.p
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.is_prime:
            return (np.asarray(a) * b) % self.p
        return self.mul_table[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("zero has no inverse")
        return self.inv_table[a]

    def power(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = int(self.mul_table[out, a])
        return out

    def sum(self, a, axis=-1):
        a = np.asarray(a)
        if self.is_prime:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for part in a:
            acc = self.add_table[acc, part]
        return acc

    def matmul(self, a, b):
        """Batched matrix product with numpy broadcasting semantics."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return np.matmul(a, b) % self.p
        squeeze_a = a.ndim == 1
        squeeze_b = b.ndim == 1
        if squeeze_a:
            a = a[None, :]
        if squeeze_b:
            b = b[:, None]
        acc = None
        for t in range(a.shape[-1]):
            term = self.mul_table[a[..., :, t, None], b[..., None, t, :]]
            acc = term if acc is None else self.add_table[acc, term]
        if squeeze_a:
            acc = acc[..., 0, :]
        if squeeze_b:
            acc = acc[..., 0]
        return acc

    def frobenius(self, a):
        out = np.ones_like(np.asarray(a))
        for _ in range(self.p):
            out = self.mul(out, a)
        return out


@lru_cache(maxsize=None)
def make_field(q: int) -> Field:
    return Field(q)


def field_elements(fd: Field) -> list[int]:
    return fd.elements()
