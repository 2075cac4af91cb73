"""The exotic nilpotent cone W x N_0 under Sp(W) over a finite field.

W = V + V* with <(v,f),(v',f')> = f'(v) - f(v'). Coordinates follow
``BasisIndex(lam, "exotic")``: chains 1..l(lam) span V, and chain i > l(lam)
is the dual chain of i' = 2 l(lam) - i + 1 read in reverse, so that
w_{ij} = v*_{i', lam_i - j + 1}. In these coordinates y = (x, x^t) is again
a Jordan matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import enhanced, linalg as la
from .combinatorics import (
    Bipartition,
    Partition,
    ShapeData,
    enumerate_bipartitions,
    partition_union,
    shape_data,
)
from .gf import Field, make_field
from .orbits import (
    DEFAULT_BUDGET,
    GeneratorSet,
    Orbit,
    RankOne,
    group_closure,
    orbit_of_point,
)
from .qcount import exotic_unipotent_dim, sp_order


@dataclass(frozen=True)
class SymplecticSpace:
    lam: Partition
    fd: Field

    @cached_property
    def basis(self) -> la.BasisIndex:
        return la.BasisIndex(Partition(self.lam), "exotic")

    @property
    def dim(self) -> int:
        return self.basis.dim

    @cached_property
    def gram(self) -> np.ndarray:
        """gram[a, b] = <e_a, e_b>."""
        b, fd = self.basis, self.fd
        g = np.zeros((b.dim, b.dim), dtype=np.int64)
        half = len(self.lam)
        for i, j in b.coords():
            partner = b.pos(b.mirror(i), b.length(i) - j + 1)
            g[b.pos(i, j), partner] = 1 if i <= half else int(fd.neg(1))
        g.setflags(write=False)
        return g

    def dual_position(self, p: int) -> int:
        """Position in W of the dual vector v*_p of the V-coordinate p."""
        b = self.basis
        i, j = b.coords()[p]
        return b.pos(b.mirror(i), b.length(i) - j + 1)

    def form(self, u, w) -> int:
        return int(self.fd.matmul(self.fd.matmul(la.as_mat(u), self.gram), la.as_mat(w)))


def make_space(lam: Partition, fd: Field) -> SymplecticSpace:
    return SymplecticSpace(Partition(lam), fd)


@dataclass
class ExoticPoint:
    space: SymplecticSpace
    w: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.w = la.as_mat(self.w)
        self.y = la.as_mat(self.y)
        d = self.space.dim
        if self.w.shape != (d,) or self.y.shape != (d, d):
            raise ValueError(f"expected a vector of length {d} and a {d}x{d} matrix")

    @property
    def fd(self) -> Field:
        return self.space.fd

    @property
    def n(self) -> int:
        return self.space.dim // 2

    def act(self, g) -> ExoticPoint:
        fd = self.fd
        g = la.as_mat(g)
        y = fd.matmul(fd.matmul(g, self.y), la.inverse(fd, g))
        return ExoticPoint(self.space, fd.matmul(g, self.w), y)

    def as_enhanced(self) -> enhanced.EnhancedPoint:
        """Forget the form: the same pair as a point of the 2n-dimensional enhanced cone."""
        return enhanced.EnhancedPoint(self.fd, self.w, self.y)

    def to_text(self) -> str:
        lines = [f"exotic {self.n} {self.fd.q}", " ".join(map(str, self.w))]
        if self.n:
            lines.append(la.format_matrix(self.y))
        return "\n".join(lines) + "\n"


def is_in_N0(fd: Field, y, gram) -> bool:
    """Nilpotent with <y u, u> = 0 for all u, tested on a basis by polarisation."""
    y = la.as_mat(y)
    if not la.is_nilpotent(fd, y):
        return False
    m = fd.matmul(y.T, la.as_mat(gram))  # m[i, j] = <y e_i, e_j>
    if np.any(np.diagonal(m)):
        return False
    return not np.any(fd.add(m, m.T))


def quadratic_form_vanishes(fd: Field, y, gram) -> bool:
    """Exhaustive version of the N_0 form condition, over all q^d vectors."""
    y, gram = la.as_mat(y), la.as_mat(gram)
    d = y.shape[0]
    for pts in la.affine_points(fd, np.zeros(d), la.identity(d)):
        yu = fd.matmul(pts, y.T)
        vals = fd.sum(fd.mul(fd.matmul(yu, gram), pts), axis=1)
        if np.any(vals):
            return False
    return True


def is_symplectic(fd: Field, g, gram) -> bool:
    g = la.as_mat(g)
    return np.array_equal(fd.matmul(fd.matmul(g.T, gram), g), la.as_mat(gram))


def _batch_symplectic(fd: Field, mats: np.ndarray, gram: np.ndarray) -> np.ndarray:
    prod = fd.matmul(fd.matmul(np.swapaxes(mats, -1, -2), gram), mats)
    return np.all(prod == gram, axis=(-1, -2))


def transvection_generators(fd: Field, gram) -> GeneratorSet:
    """u -> u + c <u, a> a for a in {e_i} and {e_i + e_j}, c a unit."""
    gram = la.as_mat(gram)
    d = gram.shape[0]
    vectors = [((i, 1),) for i in range(d)] + [((i, 1), (j, 1)) for i, j in combinations(range(d), 2)]
    gens = []
    for a in vectors:
        dense = np.zeros(d, dtype=np.int64)
        for i, c in a:
            dense[i] = c
        phi = fd.matmul(gram, dense)  # <u, a> = u . (gram a)
        sparse_phi = tuple((k, int(c)) for k, c in enumerate(phi) if c)
        for c in fd.units():
            gens.append(RankOne(a, sparse_phi, c))
    return GeneratorSet(fd, d, gens)


def sp_transvection_generators(space: SymplecticSpace) -> GeneratorSet:
    return _space_generators(space.lam, space.fd.q)


@lru_cache(maxsize=None)
def _space_generators(lam: Partition, q: int) -> GeneratorSet:
    space = make_space(lam, make_field(q))
    return transvection_generators(space.fd, space.gram)


def exotic_representative(bp: Bipartition, fd: Field) -> ExoticPoint:
    space = make_space(bp.lam, fd)
    b = space.basis
    w = np.zeros(b.dim, dtype=np.int64)
    for blk in shape_data(bp).blocks:
        if blk.j:
            w[b.pos(blk.i_h, blk.j)] = 1
    return ExoticPoint(space, w, b.jordan())


def embed_enhanced(pt: enhanced.EnhancedPoint, lam: Partition | None = None) -> ExoticPoint:
    """(v, x) -> ((v, 0), (x, x^t)), in the exotic coordinates for lam."""
    fd = pt.fd
    lam = Partition(lam) if lam is not None else (pt.basis.lam if pt.basis else None)
    if lam is None:
        raise ValueError("the Jordan type labelling the coordinates is required")
    space = make_space(lam, fd)
    n = pt.n
    w = np.zeros(2 * n, dtype=np.int64)
    w[:n] = pt.v
    y = np.zeros((2 * n, 2 * n), dtype=np.int64)
    y[:n, :n] = pt.x
    dual = [space.dual_position(p) for p in range(n)]
    # x^t sends v*_p to sum_q x[p, q] v*_q
    for p in range(n):
        for q_ in range(n):
            y[dual[q_], dual[p]] = pt.x[p, q_]
    return ExoticPoint(space, w, y)


def orbit_bfs(point: ExoticPoint, budget: int = DEFAULT_BUDGET) -> Orbit:
    gens = sp_transvection_generators(point.space)
    return orbit_of_point(point.fd, point.w, point.y, gens, budget)


@lru_cache(maxsize=256)
def _representative_orbit(bp: Bipartition, q: int, budget: int) -> Orbit:
    return orbit_bfs(exotic_representative(bp, make_field(q)), budget)


def exotic_orbit(bp: Bipartition, fd: Field, budget: int = DEFAULT_BUDGET) -> Orbit:
    return _representative_orbit(bp, fd.q, budget)


def exotic_stabiliser_count(point: ExoticPoint, budget: int = DEFAULT_BUDGET) -> int:
    size = orbit_bfs(point, budget).size
    order = sp_order(point.n)(point.fd.q)
    count, rem = divmod(order, size)
    if rem:
        raise ArithmeticError(f"orbit size {size} does not divide |Sp_{2 * point.n}| = {order}")
    return count


def exotic_classify(point: ExoticPoint, budget: int = DEFAULT_BUDGET) -> Bipartition:
    fd = point.fd
    if not is_in_N0(fd, point.y, point.space.gram):
        raise ValueError("y is not in N_0")
    doubled = la.jordan_type(fd, point.y)
    lam = halve_partition(doubled)
    if lam != point.space.lam:
        raise ValueError(f"Jordan type {tuple(doubled)} does not match the space for {tuple(point.space.lam)}")
    orbit = orbit_bfs(point, budget)
    hits = []
    for bp in enumerate_bipartitions(point.n):
        if bp.lam == lam:
            rep = exotic_representative(bp, fd)
            if orbit.contains(rep.w, rep.y):
                hits.append(bp)
    if len(hits) != 1:
        raise AssertionError(f"point matched {len(hits)} orbits: {hits}")
    return hits[0]


def halve_partition(p: Partition) -> Partition:
    """lam with lam u lam = p; ValueError if some part has odd multiplicity."""
    parts = list(p)
    if len(parts) % 2 or parts[0::2] != parts[1::2]:
        raise ValueError(f"{tuple(p)} is not of the form lam u lam")
    return Partition(parts[0::2])


# -- the map Psi~ and its kernel ---------------------------------------------


def psi_tilde_chains(shape: ShapeData, space: SymplecticSpace) -> list[list[int]]:
    """Chains of length l_h (both halves), minus i(h) and j(h) when h is in J."""
    out = []
    for blk in shape.blocks:
        chains = space.basis.block_chains(blk.l)
        if blk.h in shape.J:
            chains = [c for c in chains if c not in (blk.i_h, space.basis.mirror(blk.i_h))]
        out.append(chains)
    return out


def induced_form(space: SymplecticSpace, chains: Sequence[int]) -> np.ndarray:
    """<w_{i,top}, y^{l-1} w_{r,top}> = <w_{i,top}, w_{r,1}> on a set of equal-length chains."""
    b = space.basis
    rows = [b.top(i) for i in chains]
    cols = [b.pos(r, 1) for r in chains]
    return space.gram[np.ix_(rows, cols)]


def _check_stabilises(fd: Field, g, point: ExoticPoint):
    g = la.as_mat(g)
    ok = (
        np.array_equal(fd.matmul(g, point.w), point.w)
        and np.array_equal(fd.matmul(g, point.y), fd.matmul(point.y, g))
        and is_symplectic(fd, g, point.space.gram)
    )
    if not ok:
        raise ValueError("g is not a symplectic stabiliser of the representative point")


def psi_tilde_image(fd: Field, g, shape: ShapeData, space: SymplecticSpace | None = None,
                    check: bool = True) -> list[np.ndarray]:
    space = space or make_space(shape.lam, fd)
    if check:
        _check_stabilises(fd, g, exotic_representative(shape.bp, fd))
    return [la.top_block(space.basis, g, chains) for chains in psi_tilde_chains(shape, space)]


def ker_psi_tilde_dim(bp: Bipartition) -> int:
    return exotic_unipotent_dim(bp)


def stabiliser_space(point: ExoticPoint, extra=()):
    """Affine space {z : z y = y z, z w = w}; the symplectic condition is left to the caller."""
    return enhanced.fixed_space(point.fd, point.w, point.y, extra)


def _symplectic_points(fd, base, basis, gram, max_dim) -> np.ndarray:
    d = gram.shape[0]
    if len(basis) > max_dim:
        raise ValueError(f"affine space of dimension {len(basis)} is too large to enumerate")
    found = []
    for pts in la.affine_points(fd, base, basis):
        mats = pts.reshape(len(pts), d, d)
        found.append(mats[_batch_symplectic(fd, mats, gram)])
    return np.concatenate(found)


def stabiliser_elements(point: ExoticPoint, max_dim: int = 22) -> np.ndarray:
    base, basis = stabiliser_space(point)
    return _symplectic_points(point.fd, base, basis, point.space.gram, max_dim)


def ker_psi_tilde_elements(bp: Bipartition, fd: Field, max_dim: int = 22) -> np.ndarray:
    """Symplectic stabiliser elements with trivial Psi~-image, by brute enumeration."""
    shape = shape_data(bp)
    point = exotic_representative(bp, fd)
    space, d = point.space, point.space.dim
    eqs = []
    for chains in psi_tilde_chains(shape, space):
        for r in chains:
            for i in chains:
                row = np.zeros(d * d, dtype=np.int64)
                row[space.basis.top(r) * d + space.basis.top(i)] = 1
                eqs.append((row, int(r == i)))
    base, basis = stabiliser_space(point, eqs)
    return _symplectic_points(fd, base, basis, space.gram, max_dim)


def ker_psi_tilde_count(bp: Bipartition, fd: Field) -> int:
    return len(ker_psi_tilde_elements(bp, fd))


# -- the Levi section H~ -----------------------------------------------------


class UnsolvableSection(ArithmeticError):
    pass


@dataclass
class _Layout:
    """Positions of the free, correction and symplectic-closure entries of H~."""

    shape: ShapeData
    space: SymplecticSpace

    @cached_property
    def chains(self) -> list[list[int]]:
        """All chains of length l_h, reordered so i(h) comes first and j(h) last."""
        b = self.space.basis
        out = []
        for blk in self.shape.blocks:
            cs = b.block_chains(blk.l)
            i, j = blk.i_h, b.mirror(blk.i_h)
            out.append([i] + [c for c in cs if c not in (i, j)] + [j])
        return out

    @cached_property
    def closure_maps(self) -> list[np.ndarray]:
        """One matrix per unknown s-entry: top of chain r -> chain j(h') at the matching level."""
        b, d = self.space.basis, self.space.dim
        out = []
        for blk, chains in zip(self.shape.blocks, self.chains):
            h2 = self.shape.compensator(blk.h)
            if h2 is None:
                continue
            other = self.shape.block(h2)
            target, lvl = b.mirror(other.i_h), min(blk.l, other.l)
            for r in chains:
                e = np.zeros((d, d), dtype=np.int64)
                for t in range(lvl):
                    e[b.pos(target, lvl - t), b.pos(r, blk.l - t)] = 1
                out.append(e)
        return out

    @cached_property
    def pairing_maps(self) -> list[np.ndarray]:
        """Extra unknowns for when an s-entry moves w.

        Each is a shift from chain i(h') to chain j(h') that carries the
        w-coordinate (i(h'), j_{h'}) onto a row already hit by some s-entry
        applied to w, so it can cancel that displacement.
        """
        b, d = self.space.basis, self.space.dim
        w = exotic_representative(self.shape.bp, self.space.fd).w
        moved = np.zeros(d, dtype=bool)
        for e in self.closure_maps:
            moved |= e @ w != 0
        out = []
        targets = sorted({self.shape.compensator(blk.h) for blk in self.shape.blocks} - {None})
        for h2 in targets:
            other = self.shape.block(h2)
            i, j = other.i_h, b.mirror(other.i_h)
            for shift in range(other.l):
                e = np.zeros((d, d), dtype=np.int64)
                for s in range(shift + 1, other.l + 1):
                    e[b.pos(j, s - shift), b.pos(i, s)] = 1
                hit = e @ w != 0
                if hit.any() and not (hit & ~moved).any():
                    out.append(e)
        return out

    def unknowns(self, extended: bool) -> list[np.ndarray]:
        maps = self.closure_maps + (self.pairing_maps if extended else [])
        fd, gram = self.space.fd, self.space.gram
        for e1 in maps:
            for e2 in maps:
                if fd.matmul(fd.matmul(e1.T, gram), e2).any():
                    raise UnsolvableSection("closure entries interact quadratically")
        return maps


def _full_sp_block(shape: ShapeData, blk, assigned: np.ndarray) -> np.ndarray:
    """Block on [i(h)] + rest + [j(h)]; for h in J the ends are fixed to 1."""
    m = 2 * blk.n
    if blk.h not in shape.J:
        return assigned
    a = la.identity(m)
    a[1 : m - 1, 1 : m - 1] = assigned
    return a


def _reorder_assignment(chains_sorted: list[int], chains_layout: list[int], a: np.ndarray) -> np.ndarray:
    # assignment blocks are indexed by ascending chain number; the layout puts j(h) last
    perm = [chains_sorted.index(c) for c in chains_layout]
    return a[np.ix_(perm, perm)]


@lru_cache(maxsize=None)
def _layout(bp: Bipartition, q: int) -> _Layout:
    return _Layout(shape_data(bp), make_space(bp.lam, make_field(q)))


def build_levi_Htilde(bp: Bipartition, fd: Field, assignment: Sequence, check: bool = True) -> np.ndarray:
    """Element of the Levi section H~ whose Psi~-image is ``assignment``.

    Blocks are indexed by ascending chain number, matching ``psi_tilde_image``.
    The corrections that keep w fixed mirror the enhanced case; the remaining
    entries in the rows of j(h') are solved from z^T gram z = gram.
    """
    lay = _layout(bp, fd.q)
    shape, space = lay.shape, lay.space
    b, d = space.basis, space.dim
    gram = space.gram
    if len(assignment) != len(shape.blocks):
        raise ValueError("one block per h is required")
    z = np.zeros((d, d), dtype=np.int64)
    fulls = []
    for blk, layout_chains, a_in, psi_ch in zip(
        shape.blocks, lay.chains, assignment, psi_tilde_chains(shape, space)
    ):
        a_in = la.as_mat(a_in).reshape(len(psi_ch), len(psi_ch))
        if check and not is_symplectic(fd, a_in, induced_form(space, psi_ch)):
            raise ValueError(f"block for h={blk.h} is not symplectic for the induced form")
        inner = [c for c in layout_chains if c in psi_ch]
        a_in = _reorder_assignment(psi_ch, inner, a_in)
        a = _full_sp_block(shape, blk, a_in)
        fulls.append(a)
        for ci, i in enumerate(layout_chains):
            for cr, r in enumerate(layout_chains):
                for s in range(1, blk.l + 1):
                    z[b.pos(r, s), b.pos(i, s)] = a[cr, ci]
    for blk, layout_chains, a in zip(shape.blocks, lay.chains, fulls):
        h2 = shape.compensator(blk.h)
        if h2 is None:
            continue
        other = shape.block(h2)
        lead, lvl = other.i_h, min(blk.l, other.l)
        col = fd.neg(a[:, 0])
        col[0] = fd.add(col[0], 1)
        for cr, r in enumerate(layout_chains):
            for t in range(lvl):
                pos = (b.pos(r, lvl - t), b.pos(lead, other.l - t))
                z[pos] = fd.add(z[pos], col[cr])
    if lay.closure_maps:
        z = _complete(lay, z, exotic_representative(bp, fd).w)
    if check:
        _check_stabilises(fd, z, exotic_representative(bp, fd))
    return z


def _complete(lay: _Layout, z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Add the s-entries: solve z^T gram z = gram together with z w = w.

    The unknowns enter linearly because they all land in the rows of the
    chains j(h'), which pair only with the chains i(h'). The literal set of
    s-entries is tried first; the pairing entries are admitted only when it
    has no solution.
    """
    fd, gram = lay.space.fd, lay.space.gram
    zt_g = fd.matmul(z.T, gram)
    rhs = np.concatenate([fd.sub(gram, fd.matmul(zt_g, z)).reshape(-1), fd.sub(w, fd.matmul(z, w))])
    for extended in (False, True):
        maps = lay.unknowns(extended)
        cols = []
        for e in maps:
            form = fd.add(fd.matmul(zt_g, e), fd.matmul(fd.matmul(e.T, gram), z)).reshape(-1)
            cols.append(np.concatenate([form, fd.matmul(e, w)]))
        sol = la.solve_affine(fd, np.stack(cols, axis=1), rhs)
        if sol is not None:
            break
    else:
        raise UnsolvableSection(f"no symplectic completion for {lay.shape.bp}")
    s, null = sol
    if len(null):
        raise UnsolvableSection(f"symplectic completion for {lay.shape.bp} is not unique")
    for val, e in zip(s, maps):
        if val:
            z = fd.add(z, fd.mul(int(val), e))
    return z


def closure_entries(bp: Bipartition, fd: Field, z) -> list[int]:
    """Values of the solved s-entries of an H~ element, in layout order."""
    z = la.as_mat(z)
    out = []
    for e in _layout(bp, fd.q).closure_maps:
        r, c = np.argwhere(e)[-1]
        out.append(int(z[r, c]))
    return out


@lru_cache(maxsize=None)
def _sp_elements(q: int, gram_key: tuple) -> np.ndarray:
    fd = make_field(q)
    m = int(round(len(gram_key) ** 0.5))
    if m == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    gram = np.array(gram_key, dtype=np.int64).reshape(m, m)
    orbit = group_closure(transvection_generators(fd, gram), keep=True)
    return orbit.states[0]


def sp_elements(fd: Field, gram) -> np.ndarray:
    """All matrices preserving ``gram``, by closing the transvections."""
    return _sp_elements(fd.q, tuple(la.as_mat(gram).reshape(-1).tolist()))


def random_symplectic(fd: Field, gram, rng: np.random.Generator, steps: int = 40) -> np.ndarray:
    """Product of random transvections preserving ``gram``."""
    gens = transvection_generators(fd, gram)
    g = la.identity(gens.dim)
    for k in rng.integers(0, max(len(gens), 1), size=steps if len(gens) else 0):
        g = gens.gens[k].left(fd, g)
    return g


def Htilde_size(bp: Bipartition, fd: Field) -> int:
    shape = shape_data(bp)
    out = 1
    for m in shape.levi_ranks():
        out *= sp_order(m)(fd.q)
    return out


def enumerate_Htilde(bp: Bipartition, fd: Field, limit: int = 1 << 16) -> np.ndarray:
    shape = shape_data(bp)
    space = make_space(bp.lam, fd)
    total = Htilde_size(bp, fd)
    if total > limit:
        raise ValueError(f"|H~| = {total} exceeds the enumeration limit {limit}")
    pools = [sp_elements(fd, induced_form(space, ch)) for ch in psi_tilde_chains(shape, space)]
    d = space.dim
    out = np.zeros((total, d, d), dtype=np.int64)
    for k, choice in enumerate(product(*pools)):
        out[k] = build_levi_Htilde(bp, fd, choice, check=False)
    return out


def doubled(bp: Bipartition) -> Bipartition:
    return Bipartition(partition_union(bp.mu, bp.mu), partition_union(bp.nu, bp.nu))


# -- a common coordinate system for comparing orbits of different shapes ------


def reference_permutation(space: SymplecticSpace) -> np.ndarray:
    """perm with gram_ref[perm[a], perm[b]] = gram[a, b], gram_ref the form for (1^n).

    Both forms pair each basis vector with one partner, so a permutation suffices.
    """
    n = space.dim // 2
    ref = make_space(Partition([1] * n), space.fd).gram
    ones = lambda g: sorted((int(a), int(b)) for a, b in np.argwhere(g == 1))
    perm = np.zeros(space.dim, dtype=np.int64)
    for (a, b), (a2, b2) in zip(ones(space.gram), ones(ref)):
        perm[a], perm[b] = a2, b2
    return perm


def reference_codes(orbit: Orbit, space: SymplecticSpace) -> np.ndarray:
    """Codes of the orbit's states after moving them into the (1^n) coordinates."""
    d = space.dim
    perm = reference_permutation(space)
    inv = np.argsort(perm)
    out = []
    for lo in range(0, orbit.size, 1 << 16):
        digits = orbit.codec.decode(orbit.codes[lo : lo + (1 << 16)])
        w, y = digits[:, :d], digits[:, d:].reshape(len(digits), d, d)
        out.append(orbit.codec.encode(w[:, inv], y[:, inv][:, :, inv]))
    return np.sort(np.concatenate(out)) if out else np.zeros(0, np.int64)
