"""Breadth-first orbit enumeration for matrix groups given by generators.

States are batches of numpy index arrays, hashed to int64 codes by reading
their entries as base-q digits (for q = 2 a code is just the bitset of the
entries). Frontiers are expanded one generator at a time so memory stays
proportional to the frontier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .gf import Field

DEFAULT_BUDGET = 1 << 22
_CHUNK = 1 << 15


class BudgetExceeded(RuntimeError):
    pass


def _scale(fd: Field, c: int, v: np.ndarray) -> np.ndarray:
    return v if c == 1 else fd.mul(c, v)


def _combine(fd: Field, coeffs, column) -> np.ndarray:
    comb = None
    for k, ck in coeffs:
        term = _scale(fd, int(ck), column(k))
        comb = term if comb is None else fd.add(comb, term)
    return comb


@dataclass(frozen=True)
class RankOne:
    """g = I + c * a phi^T with phi(a) = 0, so g^-1 = I - c * a phi^T.

    ``a`` and ``phi`` are sparse: tuples of (position, field element).
    """

    a: tuple[tuple[int, int], ...]
    phi: tuple[tuple[int, int], ...]
    c: int

    def matrix(self, fd: Field, d: int, inverse: bool = False) -> np.ndarray:
        g = np.eye(d, dtype=np.int64)
        c = int(fd.neg(self.c)) if inverse else self.c
        for i, ai in self.a:
            for j, pj in self.phi:
                g[i, j] = fd.add(g[i, j], fd.mul(c, fd.mul(ai, pj)))
        return g

    def _row_update(self, fd, m, c):
        # m <- (I + c a phi^T) m, acting on axis -2
        comb = _combine(fd, self.phi, lambda k: m[..., k, :])
        out = m.copy()
        for i, ai in self.a:
            out[..., i, :] = fd.add(out[..., i, :], _scale(fd, int(fd.mul(c, ai)), comb))
        return out

    def _col_update(self, fd, m, c):
        # m <- m (I + c a phi^T), acting on axis -1
        comb = _combine(fd, self.a, lambda k: m[..., :, k])
        out = m.copy()
        for j, pj in self.phi:
            out[..., :, j] = fd.add(out[..., :, j], _scale(fd, int(fd.mul(c, pj)), comb))
        return out

    def on_vectors(self, fd: Field, v: np.ndarray) -> np.ndarray:
        return self._row_update(fd, v[..., None], self.c)[..., 0]

    def left(self, fd: Field, m: np.ndarray) -> np.ndarray:
        return self._row_update(fd, m, self.c)

    def conjugate(self, fd: Field, x: np.ndarray) -> np.ndarray:
        return self._col_update(fd, self._row_update(fd, x, self.c), fd.neg(self.c))


@dataclass(frozen=True)
class Diagonal:
    """diag(1, .., g at ``index``, .., 1)."""

    index: int
    g: int

    def matrix(self, fd: Field, d: int, inverse: bool = False) -> np.ndarray:
        m = np.eye(d, dtype=np.int64)
        m[self.index, self.index] = fd.inv(self.g) if inverse else self.g
        return m

    def on_vectors(self, fd, v):
        out = v.copy()
        out[..., self.index] = fd.mul(self.g, v[..., self.index])
        return out

    def left(self, fd, m):
        out = m.copy()
        out[..., self.index, :] = fd.mul(self.g, m[..., self.index, :])
        return out

    def conjugate(self, fd, x):
        out = self.left(fd, x)
        out[..., :, self.index] = fd.mul(int(fd.inv(self.g)), out[..., :, self.index])
        return out


Generator = RankOne | Diagonal


@dataclass
class GeneratorSet:
    fd: Field
    dim: int
    gens: list = field(default_factory=list)

    def matrices(self) -> list[np.ndarray]:
        return [g.matrix(self.fd, self.dim) for g in self.gens]

    def __len__(self):
        return len(self.gens)


def gl_generators(fd: Field, n: int) -> GeneratorSet:
    """Elementary transvections I + c E_ij and one primitive diagonal matrix."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in fd.units():
                    gens.append(RankOne(((i, 1),), ((j, 1),), c))
    if n and fd.q > 2:
        gens.append(Diagonal(0, fd.primitive_element()))
    return GeneratorSet(fd, n, gens)


class Codec:
    """Base-q digit encoding of flattened states into int64."""

    def __init__(self, fd: Field, ndigits: int):
        if ndigits * np.log2(fd.q) >= 63:
            raise ValueError(
                f"{ndigits} base-{fd.q} digits do not fit a 63-bit state code"
            )
        self.q = fd.q
        self.weights = fd.q ** np.arange(ndigits, dtype=np.int64)

    def encode(self, *parts: np.ndarray) -> np.ndarray:
        n = parts[0].shape[0]
        flat = np.concatenate([p.reshape(n, -1) for p in parts], axis=1)
        return flat @ self.weights

    def decode(self, codes: np.ndarray) -> np.ndarray:
        return (np.asarray(codes)[:, None] // self.weights[None, :]) % self.q


@dataclass
class Orbit:
    codes: np.ndarray  # sorted
    codec: Codec
    states: tuple[np.ndarray, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.codes)

    def __len__(self):
        return self.size

    def contains_code(self, code: int) -> bool:
        i = np.searchsorted(self.codes, code)
        return bool(i < len(self.codes) and self.codes[i] == code)

    def contains(self, *parts) -> bool:
        arrs = [np.asarray(p, dtype=np.int64)[None] for p in parts]
        return self.contains_code(int(self.codec.encode(*arrs)[0]))


def _member(sorted_codes: np.ndarray, codes: np.ndarray) -> np.ndarray:
    if not len(sorted_codes):
        return np.zeros(len(codes), dtype=bool)
    idx = np.searchsorted(sorted_codes, codes)
    idx[idx == len(sorted_codes)] = 0
    return sorted_codes[idx] == codes


def bfs(
    fd: Field,
    start: Sequence[np.ndarray],
    gens: Sequence,
    apply: Callable,
    budget: int = DEFAULT_BUDGET,
    keep_states: bool = False,
) -> Orbit:
    """Orbit of ``start`` (a tuple of arrays) under ``apply(gen, arrays)``."""
    start = tuple(np.asarray(s, dtype=np.int64)[None] for s in start)
    ndigits = sum(s[0].size for s in start)
    codec = Codec(fd, ndigits)
    visited = codec.encode(*start)
    frontier = start
    kept = [start] if keep_states else None
    # keep one chunk's worth of images to a few tens of MB
    chunk = max(64, _CHUNK * 32 // max(1, len(gens) * max(ndigits, 1)))
    while len(frontier[0]) and len(gens):
        new_codes, new_states = [], []
        for lo in range(0, len(frontier[0]), chunk):
            part = tuple(s[lo : lo + chunk] for s in frontier)
            imgs = [apply(g, part) for g in gens]
            cat = tuple(np.concatenate([im[i] for im in imgs]) for i in range(len(start)))
            codes, first = np.unique(codec.encode(*cat), return_index=True)
            fresh = ~_member(visited, codes)
            new_codes.append(codes[fresh])
            new_states.append(tuple(c[first[fresh]] for c in cat))
        codes = np.concatenate(new_codes)
        codes, first = np.unique(codes, return_index=True)
        if len(visited) + len(codes) > budget:
            raise BudgetExceeded(f"orbit exceeds the budget of {budget} states")
        frontier = tuple(
            np.concatenate([st[i] for st in new_states])[first] for i in range(len(start))
        )
        visited = np.union1d(visited, codes)
        if keep_states and len(frontier[0]):
            kept.append(frontier)
    states = None
    if keep_states:
        cat = tuple(np.concatenate([k[i] for k in kept]) for i in range(len(start)))
        order = np.argsort(codec.encode(*cat))
        states = tuple(c[order] for c in cat)
    return Orbit(visited, codec, states)


def point_action(fd: Field):
    """g . (v, x) = (g v, g x g^-1)."""

    def apply(g, state):
        v, x = state
        return g.on_vectors(fd, v), g.conjugate(fd, x)

    return apply


def orbit_of_point(fd: Field, v, x, gens: GeneratorSet, budget: int = DEFAULT_BUDGET) -> Orbit:
    return bfs(fd, (v, x), gens.gens, point_action(fd), budget)


def group_closure(gens: GeneratorSet, budget: int = DEFAULT_BUDGET, keep: bool = False) -> Orbit:
    """All products of the generators, as the orbit of the identity under left multiplication."""
    fd = gens.fd

    def apply(g, state):
        return (g.left(fd, state[0]),)

    return bfs(fd, (np.eye(gens.dim, dtype=np.int64),), gens.gens, apply, budget, keep)
