"""Partitions, bipartitions and the block data derived from them.

Chain and block indices in this module are 1-based wherever they are
exposed (``Block.start``, ``Block.indices``, ``ShapeData.J``); lists are
0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import groupby
from typing import Iterable, NamedTuple


class Partition(tuple):
    """Non-increasing tuple of positive integers. Trailing zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be non-increasing, got {parts}")
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive, got {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part lookup, 0 past the length."""
        if i < 1:
            raise IndexError("partition indices start at 1")
        return self[i - 1] if i <= len(self) else 0

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p >= c) for c in range(1, self[0] + 1))

    def __add__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        m = max(len(self), len(other))
        return Partition(self.part(i) + other.part(i) for i in range(1, m + 1))

    def __repr__(self):
        return f"Partition({list(self)})"


@dataclass(frozen=True)
class Bipartition:
    mu: Partition
    nu: Partition

    def __post_init__(self):
        object.__setattr__(self, "mu", Partition(self.mu))
        object.__setattr__(self, "nu", Partition(self.nu))

    @property
    def lam(self) -> Partition:
        return self.mu + self.nu

    @property
    def size(self) -> int:
        return self.mu.weight + self.nu.weight

    def __str__(self):
        fmt = lambda p: ",".join(map(str, p))
        return f"({fmt(self.mu)};{fmt(self.nu)})"


class Stats(NamedTuple):
    weight: int
    length: int
    n_invariant: int


def n_invariant(p: Partition) -> int:
    return sum(i * part for i, part in enumerate(p))


def partition_stats(p: Partition) -> Stats:
    return Stats(p.weight, p.length, n_invariant(p))


def exponent_form(p: Partition) -> list[tuple[int, int]]:
    """[(l_h, n_{l_h})] with distinct parts in decreasing order."""
    return [(value, len(list(run))) for value, run in groupby(p)]


def b_invariant(bp: Bipartition) -> int:
    b = bp.nu.weight + 2 * n_invariant(bp.mu) + 2 * n_invariant(bp.nu)
    lam = bp.lam
    other = lam.weight + 2 * n_invariant(lam) - bp.mu.weight
    assert b == other, (bp, b, other)
    return b


def partition_union(a: Partition, b: Partition) -> Partition:
    return Partition(sorted(tuple(a) + tuple(b), reverse=True))


@dataclass(frozen=True)
class Block:
    """One distinct part of lambda: rows ``start .. start+n-1`` have length ``l``.

    ``j`` and ``k`` are the (constant) values of mu and nu on those rows.
    """

    h: int
    l: int
    n: int
    start: int
    j: int
    k: int

    @property
    def indices(self) -> range:
        return range(self.start, self.start + self.n)

    @property
    def i_h(self) -> int:
        return self.start


@dataclass(frozen=True)
class ShapeData:
    bp: Bipartition
    blocks: tuple[Block, ...]

    @property
    def lam(self) -> Partition:
        return self.bp.lam

    def block(self, h: int) -> Block:
        return self.blocks[h - 1]

    def j_value(self, h: int) -> int:
        # mu vanishes past the last block
        return self.blocks[h - 1].j if 1 <= h <= len(self.blocks) else 0

    def k_value(self, h: int) -> int | None:
        """k_h, with None standing for k_0 = infinity."""
        if h == 0:
            return None
        return self.blocks[h - 1].k if h <= len(self.blocks) else 0

    @cached_property
    def J(self) -> tuple[int, ...]:
        out = []
        for blk in self.blocks:
            h = blk.h
            k_prev = self.k_value(h - 1)
            if blk.j > self.j_value(h + 1) and (k_prev is None or blk.k < k_prev):
                out.append(h)
        return tuple(out)

    def in_J(self, h: int) -> bool:
        return h in self.J

    def r_run(self, h: int) -> int:
        """t with h in R_t: how far the run of equal j-values continues past h."""
        t = 0
        while self.j_value(h + t + 1) == self.j_value(h) and h + t + 1 <= len(self.blocks):
            t += 1
        return t

    def l_run(self, h: int) -> int:
        """t with h in L_t: how far the run of equal k-values reaches back from h."""
        t = 0
        while h - t - 1 >= 1 and self.k_value(h - t - 1) == self.k_value(h):
            t += 1
        return t

    @cached_property
    def R_runs(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for blk in self.blocks:
            out.setdefault(self.r_run(blk.h), []).append(blk.h)
        return {t: tuple(hs) for t, hs in sorted(out.items())}

    @cached_property
    def L_runs(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for blk in self.blocks:
            out.setdefault(self.l_run(blk.h), []).append(blk.h)
        return {t: tuple(hs) for t, hs in sorted(out.items())}

    def compensator(self, h: int) -> int | None:
        """Block whose leading row absorbs the correction that keeps v fixed.

        None for blocks that need no correction (h in J, or j_h = 0).
        Otherwise h+t for h in R_t (t > 0), else h-t for h in L_t.
        """
        blk = self.block(h)
        if blk.j == 0 or h in self.J:
            return None
        if self.j_value(h + 1) == blk.j:
            other = h + self.r_run(h)
        else:
            t = self.l_run(h)
            assert t > 0, (self.bp, h)
            other = h - t
        assert other in self.J, (self.bp, h, other)
        return other

    def levi_ranks(self) -> list[int]:
        """Size of the general linear factor contributed by each block."""
        return [b.n - 1 if b.h in self.J else b.n for b in self.blocks]


def shape_data(bp: Bipartition) -> ShapeData:
    lam = bp.lam
    blocks = []
    start = 1
    for h, (l, n) in enumerate(exponent_form(lam), 1):
        j, k = bp.mu.part(start), bp.nu.part(start)
        for i in range(start, start + n):
            # equal rows of lambda force equal rows of mu and nu
            assert bp.mu.part(i) == j and bp.nu.part(i) == k, (bp, i)
        blocks.append(Block(h=h, l=l, n=n, start=start, j=j, k=k))
        start += n
    return ShapeData(bp, tuple(blocks))


def _partitions(n: int, largest: int) -> Iterable[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """Partitions of n in reverse lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _partitions(n, n)]


def enumerate_bipartitions(n: int) -> list[Bipartition]:
    """Bipartitions of n ordered by |mu| descending, then mu, then nu."""
    out = []
    for m in range(n, -1, -1):
        for mu in enumerate_partitions(m):
            for nu in enumerate_partitions(n - m):
                out.append(Bipartition(mu, nu))
    return out


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()[]")
    if not text:
        return Partition()
    return Partition(int(t) for t in text.replace(" ", ",").split(",") if t)


def parse_bipartition(text: str) -> Bipartition:
    """Parse ``"1,1;1"`` or ``"(1,1;1)"``."""
    text = text.strip().strip("()")
    if ";" not in text:
        raise ValueError(f"bipartition needs a ';' separator: {text!r}")
    mu, nu = text.split(";")
    return Bipartition(parse_partition(mu), parse_partition(nu))
