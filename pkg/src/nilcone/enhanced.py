"""The enhanced nilpotent cone V x N under GL(V) over a finite field.

Points are kept in the Jordan coordinates of ``linalg.BasisIndex``:
x is the standard Jordan matrix of lambda and v has a 1 at (i(h), j_h)
for every block with j_h > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from . import linalg as la
from .combinatorics import Bipartition, ShapeData, enumerate_bipartitions, shape_data
from .gf import Field, make_field
from .orbits import DEFAULT_BUDGET, GeneratorSet, Orbit, gl_generators, orbit_of_point
from .qcount import enhanced_unipotent_dim, gl_order


@dataclass
class EnhancedPoint:
    fd: Field
    v: np.ndarray
    x: np.ndarray
    basis: la.BasisIndex | None = None

    def __post_init__(self):
        self.v = la.as_mat(self.v)
        self.x = la.as_mat(self.x)
        n = self.x.shape[0]
        if self.v.shape != (n,) or self.x.shape != (n, n):
            raise ValueError("v must have length n and x must be n x n")
        if not la.is_nilpotent(self.fd, self.x):
            raise ValueError("x is not nilpotent")

    @property
    def n(self) -> int:
        return len(self.v)

    def act(self, g) -> EnhancedPoint:
        fd = self.fd
        g = la.as_mat(g)
        x = fd.matmul(fd.matmul(g, self.x), la.inverse(fd, g))
        return EnhancedPoint(fd, fd.matmul(g, self.v), x)

    def to_text(self) -> str:
        lines = [f"enhanced {self.n} {self.fd.q}", " ".join(map(str, self.v))]
        if self.n:
            lines.append(la.format_matrix(self.x))
        return "\n".join(lines) + "\n"


def representative(bp: Bipartition, fd: Field, full: bool = False) -> EnhancedPoint:
    """Normal form point of the orbit of bp.

    With ``full`` the vector is sum_i v_{i, mu_i} over every row of mu, rather
    than one term per block.
    """
    shape = shape_data(bp)
    basis = la.BasisIndex(bp.lam)
    v = np.zeros(basis.dim, dtype=np.int64)
    if full:
        for i, m in enumerate(bp.mu, 1):
            v[basis.pos(i, m)] = 1
    else:
        for blk in shape.blocks:
            if blk.j:
                v[basis.pos(blk.i_h, blk.j)] = 1
    return EnhancedPoint(fd, v, basis.jordan(), basis)


@lru_cache(maxsize=None)
def generators(q: int, n: int) -> GeneratorSet:
    return gl_generators(make_field(q), n)


def orbit_bfs(point: EnhancedPoint, budget: int = DEFAULT_BUDGET) -> Orbit:
    return orbit_of_point(point.fd, point.v, point.x, generators(point.fd.q, point.n), budget)


@lru_cache(maxsize=256)
def _representative_orbit(bp: Bipartition, q: int, budget: int) -> Orbit:
    return orbit_bfs(representative(bp, make_field(q)), budget)


def representative_orbit(bp: Bipartition, fd: Field, budget: int = DEFAULT_BUDGET) -> Orbit:
    return _representative_orbit(bp, fd.q, budget)


def stabiliser_count(point: EnhancedPoint, budget: int = DEFAULT_BUDGET) -> int:
    fd, n = point.fd, point.n
    size = orbit_bfs(point, budget).size
    order = gl_order(n)(fd.q)
    count, rem = divmod(order, size)
    if rem:
        raise ArithmeticError(f"orbit size {size} does not divide |GL_{n}| = {order}")
    if n <= 2:
        direct = len(stabiliser_elements(point))
        if direct != count:
            raise AssertionError(f"direct stabiliser count {direct} != {count}")
    return count


def stabiliser_space(point: EnhancedPoint, extra: Sequence[tuple[np.ndarray, int]] = ()):
    return fixed_space(point.fd, point.v, point.x, extra)


def fixed_space(fd: Field, v, x, extra: Sequence[tuple[np.ndarray, int]] = ()):
    """Affine space {g : g x = x g, g v = v} as (particular, basis), vec(g) row-major.

    ``extra`` adds linear equations (row over vec(g), right-hand side).
    """
    v, x = la.as_mat(v), la.as_mat(x)
    n = len(v)
    rows = [la.commutator_system(fd, x)]
    rhs = [np.zeros(n * n, dtype=np.int64)]
    fix = np.zeros((n, n * n), dtype=np.int64)
    for a in range(n):
        fix[a, a * n : (a + 1) * n] = v
    rows.append(fix)
    rhs.append(v)
    for row, val in extra:
        rows.append(la.as_mat(row)[None])
        rhs.append(np.array([val], dtype=np.int64))
    sol = la.solve_affine(fd, np.vstack(rows), np.concatenate(rhs))
    if sol is None:
        raise AssertionError("the identity should always be a solution")
    return sol


def _invertible(fd: Field, base, basis, n: int, max_dim: int) -> np.ndarray:
    if len(basis) > max_dim:
        raise ValueError(f"affine space of dimension {len(basis)} is too large to enumerate")
    found = []
    for pts in la.affine_points(fd, base, basis):
        mats = pts.reshape(len(pts), n, n)
        found.append(mats[la.batch_rank(fd, mats) == n])
    return np.concatenate(found) if found else np.zeros((0, n, n), np.int64)


def stabiliser_elements(point: EnhancedPoint, max_dim: int = 22) -> np.ndarray:
    """Every invertible matrix fixing the point, by enumerating the linear solution space."""
    base, basis = stabiliser_space(point)
    return _invertible(point.fd, base, basis, point.n, max_dim)


def random_stabiliser(point: EnhancedPoint, rng: np.random.Generator) -> np.ndarray:
    fd, n = point.fd, point.n
    base, basis = stabiliser_space(point)
    while True:
        g = la.random_in_span(fd, basis.reshape(-1, n, n), rng, base) if len(basis) else base.reshape(n, n)
        if la.rank(fd, g) == n:
            return g


def classify(point: EnhancedPoint, budget: int = DEFAULT_BUDGET) -> Bipartition:
    """The bipartition whose representative lies in the orbit of ``point``."""
    fd = point.fd
    lam = la.jordan_type(fd, point.x)
    candidates = [bp for bp in enumerate_bipartitions(point.n) if bp.lam == lam]
    orbit = orbit_bfs(point, budget)
    hits = [bp for bp in candidates if orbit.contains(*_state(representative(bp, fd)))]
    if len(hits) != 1:
        raise AssertionError(f"point matched {len(hits)} orbits: {hits}")
    return hits[0]


def _state(point: EnhancedPoint):
    return point.v, point.x


def _check_stabilises(fd: Field, g, point: EnhancedPoint):
    g = la.as_mat(g)
    if not (
        np.array_equal(fd.matmul(g, point.v), point.v)
        and np.array_equal(fd.matmul(g, point.x), fd.matmul(point.x, g))
    ):
        raise ValueError("g does not stabilise the representative point")


def psi_chains(shape: ShapeData) -> list[list[int]]:
    """Rows/columns read by Psi for each block: I_h, minus i(h) when h is in J."""
    out = []
    for blk in shape.blocks:
        chains = list(blk.indices)
        if blk.h in shape.J:
            chains.remove(blk.i_h)
        out.append(chains)
    return out


def psi_image(fd: Field, g, shape: ShapeData, check: bool = True) -> list[np.ndarray]:
    basis = la.BasisIndex(shape.lam)
    if check:
        _check_stabilises(fd, g, representative(shape.bp, fd))
    return [la.top_block(basis, g, chains) for chains in psi_chains(shape)]


def ker_psi_dim(bp: Bipartition) -> int:
    return enhanced_unipotent_dim(bp)


def _psi_trivial_equations(shape: ShapeData, n: int):
    basis = la.BasisIndex(shape.lam)
    eqs = []
    for chains in psi_chains(shape):
        for r in chains:
            for i in chains:
                row = np.zeros(n * n, dtype=np.int64)
                row[basis.top(r) * n + basis.top(i)] = 1
                eqs.append((row, int(r == i)))
    return eqs


def ker_psi_elements(bp: Bipartition, fd: Field, max_dim: int = 22) -> np.ndarray:
    """Stabiliser elements with trivial Psi-image, by brute enumeration."""
    shape = shape_data(bp)
    point = representative(bp, fd)
    base, basis = stabiliser_space(point, _psi_trivial_equations(shape, point.n))
    return _invertible(fd, base, basis, point.n, max_dim)


def ker_psi_count(bp: Bipartition, fd: Field) -> int:
    return len(ker_psi_elements(bp, fd))


@lru_cache(maxsize=None)
def _gl_elements(q: int, m: int) -> np.ndarray:
    fd = make_field(q)
    if m == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    pts = np.concatenate(list(la.affine_points(fd, np.zeros(m * m), la.identity(m * m))))
    mats = pts.reshape(len(pts), m, m)
    return mats[la.batch_rank(fd, mats) == m]


def gl_elements(fd: Field, m: int) -> np.ndarray:
    return _gl_elements(fd.q, m)


def full_block(shape: ShapeData, h: int, assigned) -> np.ndarray:
    """Block on all of I_h: for h in J the assigned block sits beside a 1 at i(h)."""
    blk = shape.block(h)
    m = shape.levi_ranks()[h - 1]
    assigned = la.as_mat(assigned).reshape(m, m)
    if blk.h not in shape.J:
        return assigned
    a = la.identity(blk.n)
    a[1:, 1:] = assigned
    return a


def build_levi_H(bp: Bipartition, fd: Field, assignment: Sequence) -> np.ndarray:
    """Element of the Levi section H with the given Psi-image.

    Each block acts chainwise on its rows of lambda. A block h outside J with
    j_h > 0 moves v, and the difference is absorbed by the leading chain of
    its compensating J-block, placed at the level that lines up with v.
    """
    shape = shape_data(bp)
    basis = la.BasisIndex(bp.lam)
    ranks = shape.levi_ranks()
    if len(assignment) != len(shape.blocks):
        raise ValueError("one block per h is required")
    y = np.zeros((basis.dim, basis.dim), dtype=np.int64)
    fulls = []
    for blk, m, assigned in zip(shape.blocks, ranks, assignment):
        assigned = la.as_mat(assigned).reshape(m, m)
        if m and la.rank(fd, assigned) != m:
            raise ValueError(f"block for h={blk.h} is not invertible")
        a = full_block(shape, blk.h, assigned)
        fulls.append(a)
        for ci, i in enumerate(blk.indices):
            for cr, r in enumerate(blk.indices):
                for s in range(1, blk.l + 1):
                    y[basis.pos(r, s), basis.pos(i, s)] = a[cr, ci]
    for blk, a in zip(shape.blocks, fulls):
        h2 = shape.compensator(blk.h)
        if h2 is None:
            continue
        other = shape.block(h2)
        lead, lvl = other.i_h, min(blk.l, other.l)
        col = fd.neg(a[:, 0])
        col[0] = fd.add(col[0], 1)
        for cr, r in enumerate(blk.indices):
            for t in range(lvl):
                pos = (basis.pos(r, lvl - t), basis.pos(lead, other.l - t))
                y[pos] = fd.add(y[pos], col[cr])
    return y


def enumerate_H(bp: Bipartition, fd: Field, limit: int = 1 << 18) -> np.ndarray:
    shape = shape_data(bp)
    pools = [gl_elements(fd, m) for m in shape.levi_ranks()]
    total = int(np.prod([len(p) for p in pools]))
    if total > limit:
        raise ValueError(f"|H| = {total} exceeds the enumeration limit {limit}")
    n = bp.size
    out = np.zeros((total, n, n), dtype=np.int64)
    for k, choice in enumerate(product(*pools)):
        out[k] = build_levi_H(bp, fd, choice)
    return out


def all_orbits(n: int, fd: Field, budget: int = DEFAULT_BUDGET) -> dict[Bipartition, Orbit]:
    return {bp: representative_orbit(bp, fd, budget) for bp in enumerate_bipartitions(n)}
