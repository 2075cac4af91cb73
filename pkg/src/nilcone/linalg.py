"""Dense linear algebra over F_q on numpy index arrays.

Matrices are ``int64`` arrays of field indices paired with a ``Field``.
Elimination always pivots on the first non-zero entry of a column.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import Partition, exponent_form
from .gf import Field


def as_mat(a) -> np.ndarray:
    return np.array(a, dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(fd: Field, m) -> tuple[np.ndarray, list[int]]:
    m = as_mat(m).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if not len(nz):
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        m[r] = fd.mul(m[r], fd.inv(m[r, c]))
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if len(others):
            m[others] = fd.sub(m[others], fd.mul(m[others, c][:, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(fd: Field, m) -> int:
    m = as_mat(m)
    if m.size == 0:
        return 0
    return len(rref(fd, m)[1])


def nullspace(fd: Field, m) -> np.ndarray:
    """Basis of {x : m x = 0}, one vector per row."""
    m = as_mat(m)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    r, pivots = rref(fd, m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = fd.neg(r[row, f])
    return basis


def solve_affine(fd: Field, a, b) -> tuple[np.ndarray, np.ndarray] | None:
    """Solutions of a x = b as (particular, nullspace basis), or None."""
    a = as_mat(a)
    b = as_mat(b).reshape(-1, 1)
    cols = a.shape[1]
    aug = np.hstack([a, b])
    r, pivots = rref(fd, aug)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, cols]
    return x, nullspace(fd, a)


def det(fd: Field, m) -> int:
    m = as_mat(m).copy()
    n = m.shape[0]
    out = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if not len(nz):
            return 0
        p = c + nz[0]
        if p != c:
            m[[c, p]] = m[[p, c]]
            out = int(fd.neg(out))
        piv = int(m[c, c])
        out = int(fd.mul(out, piv))
        below = np.arange(c + 1, n)
        if len(below):
            f = fd.mul(m[below, c], fd.inv(piv))
            m[below] = fd.sub(m[below], fd.mul(f[:, None], m[c][None, :]))
    return out


def inverse(fd: Field, m) -> np.ndarray:
    m = as_mat(m)
    n = m.shape[0]
    r, pivots = rref(fd, np.hstack([m, identity(n)]))
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def batch_rank(fd: Field, mats) -> np.ndarray:
    """Ranks of a stack of matrices, shape (N, rows, cols) -> (N,)."""
    m = as_mat(mats).copy()
    nb, rows, cols = m.shape
    r = np.zeros(nb, dtype=np.int64)
    idx = np.arange(nb)
    row_ids = np.arange(rows)
    for c in range(cols):
        cand = (m[:, :, c] != 0) & (row_ids[None, :] >= r[:, None])
        has = cand.any(axis=1) & (r < rows)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        b = idx[has]
        pr, tr = piv[has], r[has]
        top = m[b, tr].copy()
        m[b, tr] = m[b, pr]
        m[b, pr] = top
        lead = m[b, tr, c]
        m[b, tr] = fd.mul(m[b, tr], fd.inv(lead)[:, None])
        factors = m[b, :, c].copy()
        factors[np.arange(len(b)), tr] = 0
        m[b] = fd.sub(m[b], fd.mul(factors[:, :, None], m[b, tr][:, None, :]))
        r[has] += 1
    return r


def matpow(fd: Field, m, e: int) -> np.ndarray:
    out = identity(m.shape[0])
    for _ in range(e):
        out = fd.matmul(out, m)
    return out


def is_nilpotent(fd: Field, x) -> bool:
    x = as_mat(x)
    return not matpow(fd, x, x.shape[0]).any()


def kernel_dims_of_powers(fd: Field, x) -> list[int]:
    """dim ker x^i for i = 1..n."""
    x = as_mat(x)
    n = x.shape[0]
    out, p = [], identity(n)
    for _ in range(n):
        p = fd.matmul(p, x)
        out.append(n - rank(fd, p))
    return out


def jordan_type(fd: Field, x) -> Partition:
    x = as_mat(x)
    n = x.shape[0]
    if n == 0:
        return Partition()
    dims = kernel_dims_of_powers(fd, x)
    if dims[-1] != n:
        raise ValueError("matrix is not nilpotent")
    conj = [b - a for a, b in zip([0] + dims[:-1], dims)]
    return Partition(c for c in conj if c).conjugate()


def jordan_matrix(lengths: Sequence[int]) -> np.ndarray:
    """Nilpotent x with x e_(i,j) = e_(i,j-1), chains laid out consecutively."""
    n = sum(lengths)
    x = np.zeros((n, n), dtype=np.int64)
    off = 0
    for length in lengths:
        for j in range(1, length):
            x[off + j - 1, off + j] = 1
        off += length
    return x


@dataclass(frozen=True)
class BasisIndex:
    """Coordinates (i, j) <-> positions for a Jordan basis, 1-based chains and levels.

    In exotic mode there are 2*l(lambda) chains; chain i > l(lambda) is the
    mirror of chain 2*l(lambda) - i + 1 and has the same length.
    """

    lam: Partition
    mode: str = "enhanced"

    def __post_init__(self):
        if self.mode not in ("enhanced", "exotic"):
            raise ValueError(self.mode)

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        lam = tuple(self.lam)
        return lam if self.mode == "enhanced" else lam + lam[::-1]

    @property
    def num_chains(self) -> int:
        return len(self.lengths)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for length in self.lengths:
            out.append(acc)
            acc += length
        return tuple(out)

    @property
    def dim(self) -> int:
        return sum(self.lengths)

    def length(self, i: int) -> int:
        return self.lengths[i - 1]

    def pos(self, i: int, j: int) -> int:
        """0-based position of basis vector (i, j)."""
        if not (1 <= i <= self.num_chains and 1 <= j <= self.lengths[i - 1]):
            raise IndexError(f"no basis vector ({i},{j}) for lengths {self.lengths}")
        return self.offsets[i - 1] + j - 1

    def top(self, i: int) -> int:
        return self.pos(i, self.lengths[i - 1])

    def coords(self) -> list[tuple[int, int]]:
        return [(i, j) for i, length in enumerate(self.lengths, 1) for j in range(1, length + 1)]

    def mirror(self, i: int) -> int:
        return 2 * len(self.lam) - i + 1

    def block_chains(self, l: int) -> list[int]:
        """All chains of length l (the redefined I_h in exotic mode)."""
        return [i for i, length in enumerate(self.lengths, 1) if length == l]

    def jordan(self) -> np.ndarray:
        return jordan_matrix(self.lengths)


def commutator_system(fd: Field, x) -> np.ndarray:
    """Matrix of y -> xy - yx acting on row-major vec(y)."""
    x = as_mat(x)
    n = x.shape[0]
    eye = identity(n)
    # vec(x y) = (x kron I) vec(y), vec(y x) = (I kron x^T) vec(y) for row-major vec
    return fd.sub(np.kron(x, eye), np.kron(eye, x.T))


def commutant_basis(fd: Field, x) -> np.ndarray:
    n = as_mat(x).shape[0]
    ns = nullspace(fd, commutator_system(fd, x))
    return ns.reshape(len(ns), n, n)


def commutant_dim(fd: Field, x) -> int:
    n = as_mat(x).shape[0]
    return n * n - rank(fd, commutator_system(fd, x))


def commutant_condition_system(index: BasisIndex) -> np.ndarray:
    """Linear conditions on c_ij^rs(y) = y[pos(r,s), pos(i,j)] cutting out the commutant.

    Entries are 0, 1 or -1 (stored as 1 and -1 and reduced by the caller).
    Rows: (i) shift invariance, (ii) c_ij^rs = 0 for s > j,
    (iii) c_ij^{r,top} = 0 unless j is the top of chain i.
    """
    n = index.dim
    coords = index.coords()
    eqs = []

    def var(i, j, r, s):
        return index.pos(r, s) * n + index.pos(i, j)

    for (i, j), (r, s) in product(coords, coords):
        if s > j:
            e = np.zeros(n * n, dtype=np.int64)
            e[var(i, j, r, s)] = 1
            eqs.append(e)
        if s == index.length(r) and j != index.length(i):
            e = np.zeros(n * n, dtype=np.int64)
            e[var(i, j, r, s)] = 1
            eqs.append(e)
        for m in range(1, min(s, j)):
            e = np.zeros(n * n, dtype=np.int64)
            e[var(i, j, r, s)] += 1
            e[var(i, j - m, r, s - m)] -= 1
            eqs.append(e)
    if not eqs:
        return np.zeros((0, n * n), dtype=np.int64)
    return np.array(eqs)


def commutant_condition_basis(fd: Field, index: BasisIndex) -> np.ndarray:
    n = index.dim
    ns = nullspace(fd, _signed(fd, commutant_condition_system(index)))
    return ns.reshape(len(ns), n, n)


def _index_for_jordan(fd: Field, x) -> BasisIndex:
    x = as_mat(x)
    lam = jordan_type(fd, x)
    index = BasisIndex(lam)
    if not np.array_equal(x, index.jordan()):
        raise ValueError("x is not the standard Jordan matrix of its type")
    return index


def commutant_conditions_check(fd: Field, x, y) -> bool:
    """Whether y satisfies the three commutant conditions relative to Jordan x."""
    index = _index_for_jordan(fd, x)
    y = as_mat(y)
    vals = fd.matmul(_signed(fd, commutant_condition_system(index)), y.reshape(-1))
    return not np.any(vals)


def _signed(fd: Field, a: np.ndarray) -> np.ndarray:
    return np.where(a < 0, fd.neg(np.abs(a)), a)


def top_block(index: BasisIndex, y, chains: Sequence[int]) -> np.ndarray:
    """(c_{i,top}^{r,top}(y))_{r,i in chains}, rows r and columns i."""
    pos = [index.top(i) for i in chains]
    return as_mat(y)[np.ix_(pos, pos)]


def det_factorization_check(fd: Field, x, y) -> bool:
    """det(y) against the product over blocks of det(top block)^l."""
    index = _index_for_jordan(fd, x)
    y = as_mat(y)
    if fd.matmul(x, y).tolist() != fd.matmul(y, x).tolist():
        raise ValueError("y does not commute with x")
    rhs = 1
    start = 1
    for l, mult in exponent_form(index.lam):
        blk = top_block(index, y, range(start, start + mult))
        rhs = int(fd.mul(rhs, fd.power(det(fd, blk), l)))
        start += mult
    return det(fd, y) == rhs


def affine_points(fd: Field, base, basis, chunk: int = 1 << 15) -> Iterator[np.ndarray]:
    """All points base + span(basis) in chunks of flattened rows."""
    base = as_mat(base).reshape(-1)
    basis = as_mat(basis).reshape(len(basis), base.size)
    k = len(basis)
    total = fd.q**k
    for lo in range(0, total, chunk):
        codes = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        coeffs = (codes[:, None] // fd.q ** np.arange(k)[None, :]) % fd.q
        pts = fd.matmul(coeffs, basis) if k else np.zeros((len(codes), base.size), np.int64)
        yield fd.add(pts, base[None, :])


def random_in_span(fd: Field, basis, rng: np.random.Generator, base=None) -> np.ndarray:
    basis = as_mat(basis)
    flat = basis.reshape(len(basis), -1)
    coeffs = rng.integers(0, fd.q, size=len(basis))
    v = fd.matmul(coeffs, flat) if len(basis) else np.zeros(flat.shape[1], np.int64)
    if base is not None:
        v = fd.add(v, as_mat(base).reshape(-1))
    return v.reshape(basis.shape[1:])


def random_invertible(fd: Field, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        g = rng.integers(0, fd.q, size=(n, n))
        if rank(fd, g) == n:
            return g


def format_matrix(m) -> str:
    return "\n".join(" ".join(str(int(e)) for e in row) for row in as_mat(m))


def parse_matrix(lines: Sequence[str], n: int, q: int) -> np.ndarray:
    rows = [[int(t) for t in line.split()] for line in lines]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected a {n}x{n} matrix")
    m = as_mat(rows)
    if m.size and (m.min() < 0 or m.max() >= q):
        raise ValueError(f"matrix entries must be field indices 0..{q - 1}")
    return m
