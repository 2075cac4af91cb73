"""Exact polynomials in q and the closed-form orbit/stabiliser counts.

Every factor of the form phi_m(q^-s) = prod_{r<=m} (1 - q^{-sr}) is cleared
against its accompanying power of q before any arithmetic happens, so all
values at rest are honest integer polynomials.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .combinatorics import (
    Bipartition,
    Partition,
    b_invariant,
    exponent_form,
    n_invariant,
    shape_data,
)


class InexactDivision(ArithmeticError):
    pass


class QPoly:
    """Integer polynomial in q stored as an ascending coefficient tuple."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> QPoly:
        if e < 0:
            raise ValueError("negative exponent")
        return cls([0] * e + [c])

    @classmethod
    def const(cls, c: int) -> QPoly:
        return cls([c])

    @property
    def degree(self) -> int | None:
        """None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _coerce(self, other) -> QPoly:
        if isinstance(other, QPoly):
            return other
        if isinstance(other, int):
            return QPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return QPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)
        )

    __radd__ = __add__

    def __neg__(self):
        return QPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: QPoly) -> tuple[QPoly, QPoly]:
        """Long division; requires the divisor's leading coefficient to be +-1."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise InexactDivision("divisor must have a unit leading coefficient")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * lead
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return QPoly(quot), QPoly(rem)

    def exact_div(self, other: QPoly, context: object = None) -> QPoly:
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            where = f" for {context}" if context is not None else ""
            raise InexactDivision(f"non-zero remainder {rem}{where}")
        return quot

    def __floordiv__(self, other):
        return self.exact_div(other)

    def subs_power(self, k: int) -> QPoly:
        """Substitute q -> q^k."""
        out = [0] * (k * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            out[k * i] = a
        return QPoly(out)

    def __call__(self, q: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * q + a
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            mag = abs(c)
            body = str(mag) if (mag != 1 or not mono) else ""
            if body and mono:
                body += "*"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body + mono))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s


Q = QPoly.monomial(1)


def cleared_phi(power: int, sizes: Sequence[int], step: int = 1) -> QPoly:
    """q^power * prod_m phi_m(q^-step), with the negative powers absorbed.

    phi_m(q^-s) = q^{-s m(m+1)/2} prod_{r=1..m} (q^{sr} - 1).
    """
    shift = power - step * sum(m * (m + 1) // 2 for m in sizes)
    if shift < 0:
        raise ValueError(f"q^{power} too small to clear phi factors {list(sizes)}")
    out = QPoly.monomial(shift)
    for m in sizes:
        for r in range(1, m + 1):
            out = out * (QPoly.monomial(step * r) - 1)
    return out


def gl_order(n: int) -> QPoly:
    return cleared_phi(n * n, [n])


def sp_order(n: int) -> QPoly:
    """|Sp_{2n}(F_q)|."""
    return cleared_phi(n + 2 * n * n, [n], step=2)


def ordinary_stab_order(lam: Partition) -> QPoly:
    lam = Partition(lam)
    mults = [m for _, m in exponent_form(lam)]
    return cleared_phi(lam.weight + 2 * n_invariant(lam), mults)


def ordinary_orbit_size(lam: Partition) -> QPoly:
    lam = Partition(lam)
    return gl_order(lam.weight).exact_div(ordinary_stab_order(lam), lam)


def _levi_sizes(bp: Bipartition) -> list[int]:
    return shape_data(bp).levi_ranks()


def enhanced_stab_order(bp: Bipartition) -> QPoly:
    return cleared_phi(b_invariant(bp), _levi_sizes(bp))


def enhanced_orbit_size(bp: Bipartition) -> QPoly:
    return gl_order(bp.size).exact_div(enhanced_stab_order(bp), bp)


def exotic_stab_order(bp: Bipartition) -> QPoly:
    return cleared_phi(bp.size + 2 * b_invariant(bp), _levi_sizes(bp), step=2)


def exotic_orbit_size(bp: Bipartition) -> QPoly:
    return sp_order(bp.size).exact_div(exotic_stab_order(bp), bp)


def fini_check(bp: Bipartition) -> bool:
    return exotic_orbit_size(bp) == enhanced_orbit_size(bp).subs_power(2)


def ordinary_unipotent_dim(lam: Partition) -> int:
    lam = Partition(lam)
    return lam.weight + 2 * n_invariant(lam) - sum(m * m for _, m in exponent_form(lam))


def enhanced_unipotent_dim(bp: Bipartition) -> int:
    return b_invariant(bp) - sum(m * m for m in _levi_sizes(bp))


def exotic_unipotent_dim(bp: Bipartition) -> int:
    return bp.size + 2 * b_invariant(bp) - sum(2 * m * m + m for m in _levi_sizes(bp))
