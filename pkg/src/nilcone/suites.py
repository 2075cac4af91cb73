"""Verification suites shared by the CLI, the acceptance tests and the scripts.

A suite returns a flat list of ``Check`` records; report order follows the
bipartition enumeration order no matter how the jobs were scheduled.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import enhanced as en
from . import exotic as ex
from . import linalg as la
from . import qcount as qc
from .combinatorics import (
    Bipartition,
    Partition,
    enumerate_bipartitions,
    enumerate_partitions,
    n_invariant,
    shape_data,
)
from .gf import make_field
from .orbits import DEFAULT_BUDGET, group_closure


@dataclass
class Check:
    name: str
    observed: object
    expected: object
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.observed == self.expected

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Bounds:
    """Largest n each brute-force suite runs at by default, keyed by q."""

    enhanced_bfs: tuple[tuple[int, int], ...] = ((2, 4), (3, 3))
    exotic_bfs: tuple[tuple[int, int], ...] = ((2, 3), (3, 2))
    levi: tuple[tuple[int, int], ...] = ((2, 3), (3, 2))
    fini: tuple[tuple[int, int], ...] = ((2, 2), (3, 2))
    commutant: tuple[tuple[int, int], ...] = ((2, 5), (3, 5))
    symbolic_n: int = 12
    census_n: int = 16
    fallback_n: int = 1

    def limit(self, suite: str, q: int) -> int:
        if suite == "symbolic":
            return self.symbolic_n
        table = dict(getattr(self, suite.replace("-", "_")))
        return table.get(q, self.fallback_n)


@dataclass(frozen=True)
class RunConfig:
    budget: int = DEFAULT_BUDGET
    threads: int = 1
    seed: int = 0
    samples: int = 100


def _pmap(fn: Callable, items: Iterable, threads: int) -> list:
    items = list(items)
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _sum(polys) -> qc.QPoly:
    out = qc.QPoly()
    for p in polys:
        out = out + p
    return out


# -- symbolic ------------------------------------------------------------------


def symbolic(n: int) -> list[Check]:
    """Polynomial identities for every size up to n."""
    checks = []
    for m in range(n + 1):
        bps = enumerate_bipartitions(m)
        parts = enumerate_partitions(m)
        checks.append(Check(f"sum enhanced n={m}", _sum(map(qc.enhanced_orbit_size, bps)),
                            qc.QPoly.monomial(m * m)))
        checks.append(Check(f"sum exotic n={m}", _sum(map(qc.exotic_orbit_size, bps)),
                            qc.QPoly.monomial(2 * m * m)))
        checks.append(Check(f"sum ordinary n={m}", _sum(map(qc.ordinary_orbit_size, parts)),
                            qc.QPoly.monomial(m * m - m)))
        bad_enh = [str(bp) for bp in bps
                   if qc.enhanced_stab_order(bp) * qc.enhanced_orbit_size(bp) != qc.gl_order(m)]
        bad_exo = [str(bp) for bp in bps
                   if qc.exotic_stab_order(bp) * qc.exotic_orbit_size(bp) != qc.sp_order(m)]
        bad_ord = [str(tuple(p)) for p in parts
                   if qc.ordinary_stab_order(p) * qc.ordinary_orbit_size(p) != qc.gl_order(m)]
        checks.append(Check(f"stab x orbit = group order n={m}", bad_enh + bad_exo + bad_ord, []))
    for c in checks:
        if isinstance(c.observed, qc.QPoly):
            c.observed, c.expected = list(c.observed.coeffs), list(c.expected.coeffs)
    return checks


def fini_symbolic(n: int) -> list[Check]:
    out = []
    for m in range(n + 1):
        bad = [str(bp) for bp in enumerate_bipartitions(m) if not qc.fini_check(bp)]
        out.append(Check(f"exotic(q) = enhanced(q^2) coefficientwise n={m}", bad, []))
    return out


# -- brute force orbits ----------------------------------------------------------


def enhanced_bfs(n: int, q: int, cfg: RunConfig = RunConfig()) -> list[Check]:
    fd = make_field(q)
    bps = enumerate_bipartitions(n)
    orbits = _pmap(lambda bp: en.representative_orbit(bp, fd, cfg.budget), bps, cfg.threads)
    checks = [
        Check(f"enhanced orbit {bp} q={q}", o.size, qc.enhanced_orbit_size(bp)(q))
        for bp, o in zip(bps, orbits)
    ]
    union = np.unique(np.concatenate([o.codes for o in orbits]))
    checks.append(Check(f"enhanced orbits disjoint n={n} q={q}", len(union), sum(o.size for o in orbits)))
    checks.append(Check(f"enhanced total n={n} q={q}", sum(o.size for o in orbits), q ** (n * n)))
    checks.append(Check(f"enhanced orbit count n={n}", len(orbits), len(bps)))
    return checks


def exotic_bfs(n: int, q: int, cfg: RunConfig = RunConfig()) -> list[Check]:
    fd = make_field(q)
    bps = enumerate_bipartitions(n)
    orbits = _pmap(lambda bp: ex.exotic_orbit(bp, fd, cfg.budget), bps, cfg.threads)
    checks = [
        Check(f"exotic orbit {bp} q={q}", o.size, qc.exotic_orbit_size(bp)(q))
        for bp, o in zip(bps, orbits)
    ]
    ref = [ex.reference_codes(o, ex.make_space(bp.lam, fd)) for bp, o in zip(bps, orbits)]
    union = np.unique(np.concatenate(ref))
    checks.append(Check(f"exotic orbits disjoint n={n} q={q}", len(union), sum(o.size for o in orbits)))
    checks.append(Check(f"exotic total n={n} q={q}", sum(o.size for o in orbits), q ** (2 * n * n)))
    space = ex.make_space(Partition([1] * n), fd)
    closure = group_closure(ex.sp_transvection_generators(space), cfg.budget)
    checks.append(Check(f"transvection closure Sp_{2 * n}(F_{q})", closure.size, qc.sp_order(n)(q)))
    return checks


def fini_bfs(n: int, q: int, cfg: RunConfig = RunConfig()) -> list[Check]:
    """Exotic BFS sizes at q against enhanced BFS sizes at q^2, orbit by orbit."""
    fd, fd2 = make_field(q), make_field(q * q)
    bps = enumerate_bipartitions(n)

    def job(bp):
        return ex.exotic_orbit(bp, fd, cfg.budget).size, en.representative_orbit(bp, fd2, cfg.budget).size

    return [Check(f"fini {bp} q={q}", a, b) for bp, (a, b) in zip(bps, _pmap(job, bps, cfg.threads))]


# -- Levi sections -----------------------------------------------------------------


def _distinct(mats: np.ndarray) -> int:
    return len({m.tobytes() for m in mats})


def levi_enhanced(bp: Bipartition, q: int, cfg: RunConfig = RunConfig()) -> list[Check]:
    fd = make_field(q)
    shape = shape_data(bp)
    point = en.representative(bp, fd)
    H = en.enumerate_H(bp, fd)
    kernel = en.ker_psi_count(bp, fd)
    stab = en.stabiliser_count(point, cfg.budget)
    expected_H = 1
    for m in shape.levi_ranks():
        expected_H *= qc.gl_order(m)(q)
    stabilises = all(
        np.array_equal(fd.matmul(g, point.v), point.v)
        and np.array_equal(fd.matmul(g, point.x), fd.matmul(point.x, g))
        for g in H
    )
    images = {tuple(b.tobytes() for b in en.psi_image(fd, g, shape, check=False)) for g in H}
    trivial = sum(
        all(np.array_equal(b, la.identity(len(b))) for b in en.psi_image(fd, g, shape, check=False))
        for g in H
    )
    tag = f"{bp} q={q}"
    return [
        Check(f"|H| {tag}", len(H), expected_H),
        Check(f"H distinct {tag}", _distinct(H), len(H)),
        Check(f"|ker Psi| {tag}", kernel, q ** en.ker_psi_dim(bp)),
        Check(f"|H| |ker Psi| = |stabiliser| {tag}", len(H) * kernel, stab),
        Check(f"H stabilises {tag}", stabilises, True),
        Check(f"Psi injective on H {tag}", len(images), len(H)),
        Check(f"H meets ker Psi in the identity only {tag}", trivial, 1),
    ]


def levi_exotic(bp: Bipartition, q: int, cfg: RunConfig = RunConfig(),
                brute_stabiliser: bool = True, full_limit: int = 1 << 13) -> list[Check]:
    """H~ checks; past ``full_limit`` elements a random sample of assignments is built instead."""
    fd = make_field(q)
    shape = shape_data(bp)
    point = ex.exotic_representative(bp, fd)
    space = point.space
    forms = [ex.induced_form(space, ch) for ch in ex.psi_tilde_chains(shape, space)]
    size = ex.Htilde_size(bp, fd)
    tag = f"{bp} q={q}"
    if size <= full_limit:
        H = ex.enumerate_Htilde(bp, fd, limit=full_limit)
        assignments = None
    else:
        # the block groups are too big to list; their orders are checked by the closure test
        rng = np.random.default_rng(cfg.seed)
        assignments = [[ex.random_symplectic(fd, f, rng) for f in forms] for _ in range(cfg.samples)]
        H = np.array([ex.build_levi_Htilde(bp, fd, a, check=False) for a in assignments])
    stabilises = all(
        np.array_equal(fd.matmul(g, point.w), point.w)
        and np.array_equal(fd.matmul(g, point.y), fd.matmul(point.y, g))
        and ex.is_symplectic(fd, g, space.gram)
        for g in H
    )
    images = [ex.psi_tilde_image(fd, g, shape, space, check=False) for g in H]
    checks = [Check(f"H~ stabilises and is symplectic {tag}", stabilises, True)]
    if assignments is None:
        checks += [
            Check(f"|H~| {tag}", len(H), size),
            Check(f"H~ distinct {tag}", _distinct(H), size),
            Check(f"Psi~ injective on H~ {tag}", len({tuple(b.tobytes() for b in im) for im in images}), size),
        ]
    else:
        hits = sum(all(np.array_equal(b, a) for b, a in zip(im, asg)) for im, asg in zip(images, assignments))
        checks.append(Check(f"Psi~ recovers sampled assignments {tag}", hits, len(assignments)))
    if brute_stabiliser:
        kernel = ex.ker_psi_tilde_count(bp, fd)
        stab = ex.exotic_stabiliser_count(point, cfg.budget)
        checks += [
            Check(f"|ker Psi~| {tag}", kernel, q ** ex.ker_psi_tilde_dim(bp)),
            Check(f"|H~| |ker Psi~| = |stabiliser| {tag}", size * kernel, stab),
        ]
    else:
        formula = qc.exotic_stab_order(bp)(q)
        checks.append(Check(f"|H~| q^dim ker = stabiliser formula {tag}",
                            size * q ** ex.ker_psi_tilde_dim(bp), formula))
    return checks


def levi(n: int, q: int, cone: str | None = None, cfg: RunConfig = RunConfig()) -> list[Check]:
    bps = enumerate_bipartitions(n)
    out = []
    if cone in (None, "enhanced"):
        for chunk in _pmap(lambda bp: levi_enhanced(bp, q, cfg), bps, cfg.threads):
            out += chunk
    if cone in (None, "exotic"):
        for chunk in _pmap(lambda bp: levi_exotic(bp, q, cfg), bps, cfg.threads):
            out += chunk
    return out


# -- embedding of the enhanced cone --------------------------------------------------


def embedding(n: int, q: int, cfg: RunConfig = RunConfig()) -> list[Check]:
    fd = make_field(q)
    out = []
    for bp in enumerate_bipartitions(n):
        pt = ex.embed_enhanced(en.representative(bp, fd))
        inside = ex.is_in_N0(fd, pt.y, pt.space.gram) and ex.exotic_orbit(bp, fd, cfg.budget).contains(pt.w, pt.y)
        out.append(Check(f"embedded {bp} lies in its exotic orbit q={q}", inside, True))
        out.append(Check(f"GL(W) class of embedded {bp} q={q}",
                         str(en.classify(pt.as_enhanced(), cfg.budget)), str(ex.doubled(bp))))
    return out


# -- commutant conditions ----------------------------------------------------------------


def commutant(n: int, q: int, cfg: RunConfig = RunConfig()) -> list[Check]:
    fd = make_field(q)
    rng = np.random.default_rng(cfg.seed)
    out = []
    for m in range(1, n + 1):
        for lam in enumerate_partitions(m):
            index = la.BasisIndex(lam)
            x = index.jordan()
            direct = la.commutant_basis(fd, x)
            cond = la.commutant_condition_basis(fd, index)
            expected = lam.weight + 2 * n_invariant(lam)
            tag = f"{tuple(lam)} q={q}"
            out.append(Check(f"commutant dim {tag}", len(direct), expected))
            out.append(Check(f"condition space dim {tag}", len(cond), expected))
            both = np.concatenate([direct.reshape(len(direct), -1), cond.reshape(len(cond), -1)])
            out.append(Check(f"condition space = commutant {tag}", la.rank(fd, both), expected))
            ok = 0
            for _ in range(cfg.samples):
                y = la.random_in_span(fd, cond, rng)
                ok += la.det_factorization_check(fd, x, y)
            out.append(Check(f"det factorisation {tag}", ok, cfg.samples))
    return out


SUITES = ("symbolic", "enhanced-bfs", "exotic-bfs", "fini", "levi", "commutant")


def run_suite(suite: str, n: int, q: int | None, cone: str | None = None,
              cfg: RunConfig = RunConfig()) -> list[Check]:
    if suite == "symbolic":
        return symbolic(n)
    if q is None:
        raise ValueError(f"suite {suite} needs a field size")
    if suite == "enhanced-bfs":
        return enhanced_bfs(n, q, cfg)
    if suite == "exotic-bfs":
        return exotic_bfs(n, q, cfg) + embedding(n, q, cfg) if n <= 2 else exotic_bfs(n, q, cfg)
    if suite == "fini":
        return fini_symbolic(n) + fini_bfs(n, q, cfg)
    if suite == "levi":
        return levi(n, q, cone, cfg)
    if suite == "commutant":
        return commutant(n, q, cfg)
    raise ValueError(f"unknown suite {suite}")
