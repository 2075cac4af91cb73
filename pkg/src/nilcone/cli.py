"""Command line interface: ``census``, ``verify`` and ``orbit-of``.

Exit status is 0 when everything passed, 1 when a verification check failed
and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import enhanced as en
from . import exotic as ex
from . import linalg as la
from . import qcount as qc
from . import suites
from .combinatorics import (
    Bipartition,
    Partition,
    b_invariant,
    enumerate_bipartitions,
    enumerate_partitions,
    exponent_form,
    n_invariant,
    shape_data,
)
from .gf import make_field
from .orbits import DEFAULT_BUDGET, BudgetExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CONES = ("ordinary", "enhanced", "exotic")


class UsageError(Exception):
    pass


@dataclass
class OrbitReport:
    mu: list[int]
    nu: list[int]
    lam: list[int]
    b: int
    J: list[int]
    levi: list[tuple[str, int]]
    unipotent_dim: int
    orbit_poly: list[int]
    stab_poly: list[int]
    counts: dict[int, int] = field(default_factory=dict)
    bfs_verified: bool | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        d["levi"] = [list(x) for x in self.levi]
        d["counts"] = {str(q): c for q, c in self.counts.items()}
        return d


def ordinary_report(lam: Partition, qs: Sequence[int]) -> OrbitReport:
    orbit = qc.ordinary_orbit_size(lam)
    return OrbitReport(
        mu=[], nu=[], lam=list(lam),
        b=lam.weight + 2 * n_invariant(lam),
        J=[],
        levi=[("GL", m) for _, m in exponent_form(lam)],
        unipotent_dim=qc.ordinary_unipotent_dim(lam),
        orbit_poly=list(orbit.coeffs),
        stab_poly=list(qc.ordinary_stab_order(lam).coeffs),
        counts={q: orbit(q) for q in qs},
    )


def bipartition_report(bp: Bipartition, cone: str, qs: Sequence[int]) -> OrbitReport:
    shape = shape_data(bp)
    if cone == "enhanced":
        orbit, stab, kind = qc.enhanced_orbit_size(bp), qc.enhanced_stab_order(bp), "GL"
        udim = qc.enhanced_unipotent_dim(bp)
    else:
        orbit, stab, kind = qc.exotic_orbit_size(bp), qc.exotic_stab_order(bp), "Sp"
        udim = qc.exotic_unipotent_dim(bp)
    return OrbitReport(
        mu=list(bp.mu), nu=list(bp.nu), lam=list(bp.lam),
        b=b_invariant(bp),
        J=list(shape.J),
        levi=[(kind, 2 * m if kind == "Sp" else m) for m in shape.levi_ranks()],
        unipotent_dim=udim,
        orbit_poly=list(orbit.coeffs),
        stab_poly=list(stab.coeffs),
        counts={q: orbit(q) for q in qs},
    )


def expected_total(cone: str, n: int) -> qc.QPoly:
    e = {"ordinary": n * n - n, "enhanced": n * n, "exotic": 2 * n * n}[cone]
    return qc.QPoly.monomial(e)


def census(cone: str, n: int, qs: Sequence[int]) -> dict:
    if cone == "ordinary":
        rows = [ordinary_report(lam, qs) for lam in enumerate_partitions(n)]
    else:
        rows = [bipartition_report(bp, cone, qs) for bp in enumerate_bipartitions(n)]
    total = qc.QPoly()
    for r in rows:
        total = total + qc.QPoly(r.orbit_poly)
    expected = expected_total(cone, n)
    return {
        "cone": cone,
        "n": n,
        "q": list(qs),
        "rows": [r.as_dict() for r in rows],
        "total": {
            "poly": list(total.coeffs),
            "expected_poly": list(expected.coeffs),
            "counts": {str(q): total(q) for q in qs},
            "expected_counts": {str(q): expected(q) for q in qs},
            "matches": total == expected,
        },
    }


def _fmt_parts(p) -> str:
    return ",".join(map(str, p))


def census_csv(table: dict) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    qs = table["q"]
    out.writerow(["mu", "nu", "lambda", "b", "J", "levi", "unipotent_dim", "orbit_poly"] + [f"q={q}" for q in qs])
    for r in table["rows"]:
        levi = " ".join(f"{k}{m}" for k, m in r["levi"])
        out.writerow([_fmt_parts(r["mu"]), _fmt_parts(r["nu"]), _fmt_parts(r["lambda"]), r["b"],
                      _fmt_parts(r["J"]), levi, r["unipotent_dim"], " ".join(map(str, r["orbit_poly"]))]
                     + [r["counts"][str(q)] for q in qs])
    t = table["total"]
    out.writerow(["total", "", "", "", "", "", "", " ".join(map(str, t["poly"]))] + [t["counts"][str(q)] for q in qs])
    out.writerow(["expected", "", "", "", "", "", "", " ".join(map(str, t["expected_poly"]))]
                 + [t["expected_counts"][str(q)] for q in qs])
    return buf.getvalue()


# -- point files ---------------------------------------------------------------------


def read_point(text: str) -> en.EnhancedPoint | ex.ExoticPoint:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UsageError("empty point file")
    head = lines[0].split()
    if len(head) != 3 or head[0] not in ("enhanced", "exotic"):
        raise UsageError("first line must be 'enhanced n q' or 'exotic n q'")
    kind = head[0]
    try:
        n, q = int(head[1]), int(head[2])
        fd = make_field(q)
    except ValueError as e:
        raise UsageError(str(e)) from e
    d = n if kind == "enhanced" else 2 * n
    body = lines[1:]
    if d == 0:
        body = [ln for ln in body if ln]
        vec = np.zeros(0, dtype=np.int64)
        mat = np.zeros((0, 0), dtype=np.int64)
    else:
        if len(body) != d + 1:
            raise UsageError(f"expected a vector line and {d} matrix rows, got {len(body)} lines")
        vec = la.as_mat([int(t) for t in body[0].split()])
        if len(vec) != d or (vec.size and (vec.min() < 0 or vec.max() >= q)):
            raise UsageError(f"vector must have {d} entries in 0..{q - 1}")
        try:
            mat = la.parse_matrix(body[1:], d, q)
        except ValueError as e:
            raise UsageError(str(e)) from e
    if kind == "enhanced":
        try:
            return en.EnhancedPoint(fd, vec, mat)
        except ValueError as e:
            raise UsageError(str(e)) from e
    if not la.is_nilpotent(fd, mat):
        raise UsageError("y is not nilpotent")
    try:
        lam = ex.halve_partition(la.jordan_type(fd, mat))
    except ValueError as e:
        raise UsageError(f"y is not in N_0: {e}") from e
    space = ex.make_space(lam, fd)
    if not ex.is_in_N0(fd, mat, space.gram):
        raise UsageError(f"y is not in N_0 for the form attached to lambda={tuple(lam)}")
    return ex.ExoticPoint(space, vec, mat)


def orbit_of(text: str, budget: int = DEFAULT_BUDGET) -> dict:
    pt = read_point(text)
    q = pt.fd.q
    if isinstance(pt, en.EnhancedPoint):
        bp, cone = en.classify(pt, budget), "enhanced"
    else:
        bp, cone = ex.exotic_classify(pt, budget), "exotic"
    report = bipartition_report(bp, cone, [q])
    return {"cone": cone, "bipartition": str(bp), **report.as_dict(), "count": report.counts[q]}


# -- argument handling ---------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilcone", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="closed-form orbit table for one cone and size")
    c.add_argument("--cone", choices=CONES, required=True)
    c.add_argument("-n", type=int, required=True)
    c.add_argument("--q", type=int, action="append", dest="qs", help="field size, repeatable")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--threads", type=int, default=1, help="accepted for symmetry; tables are cheap")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=suites.SUITES, required=True)
    v.add_argument("-n", type=int, required=True)
    v.add_argument("--q", type=int, action="append", dest="qs")
    v.add_argument("--cone", choices=("enhanced", "exotic"), help="restrict the levi suite")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="BFS state budget")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--unbounded", action="store_true",
                   help="ignore the default size bounds (may need a lot of memory and time)")

    o = sub.add_parser("orbit-of", help="classify a point file")
    o.add_argument("file")
    o.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    o.add_argument("--format", choices=("json", "text"), default="text")
    return p


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _run_census(args, out) -> int:
    bounds = suites.Bounds()
    if args.n < 0 or args.n > bounds.census_n:
        raise UsageError(f"-n must be in 0..{bounds.census_n}")
    qs = args.qs or [2]
    for q in qs:
        make_field(q)
    table = census(args.cone, args.n, qs)
    out.write(census_csv(table) if args.format == "csv" else _dump(table) + "\n")
    return EXIT_OK


def _run_verify(args, out, err) -> int:
    bounds = suites.Bounds()
    if args.n < 0:
        raise UsageError("-n must be non-negative")
    qs = [None] if args.suite == "symbolic" else (args.qs or [2])
    cfg = suites.RunConfig(budget=args.budget, threads=max(1, args.threads))
    results = []
    for q in qs:
        if q is not None:
            make_field(q)
        limit = bounds.limit(args.suite, q)
        if args.n > limit:
            if not args.unbounded:
                raise UsageError(f"suite {args.suite} at q={q} is bounded to n <= {limit}; pass --unbounded to override")
            err.write(f"warning: n={args.n} exceeds the default bound {limit}; expect heavy memory use\n")
        results += suites.run_suite(args.suite, args.n, q, args.cone, cfg)
    failed = [c for c in results if not c.passed]
    report = {
        "suite": args.suite,
        "n": args.n,
        "q": [q for q in qs if q is not None],
        "passed": not failed,
        "num_checks": len(results),
        "num_failed": len(failed),
        "checks": [c.as_dict() for c in results],
    }
    out.write(_dump(report) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def _run_orbit_of(args, out) -> int:
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(str(e)) from e
    rep = orbit_of(text, args.budget)
    if args.format == "json":
        out.write(_dump(rep) + "\n")
    else:
        poly = qc.QPoly(rep["orbit_poly"])
        out.write(
            f"cone: {rep['cone']}\n"
            f"bipartition: {rep['bipartition']}\n"
            f"lambda: ({_fmt_parts(rep['lambda'])})\n"
            f"b: {rep['b']}\n"
            f"J: {rep['J']}\n"
            f"orbit polynomial: {poly}\n"
            f"orbit polynomial coefficients: {rep['orbit_poly']}\n"
            f"count at q={next(iter(rep['counts']))}: {rep['count']}\n"
        )
    return EXIT_OK


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.command == "census":
            return _run_census(args, out)
        if args.command == "verify":
            return _run_verify(args, out, err)
        return _run_orbit_of(args, out)
    except (UsageError, ValueError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except BudgetExceeded as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
