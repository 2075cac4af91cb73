"""Orbit sizes of the exotic cone over F_q next to the enhanced cone over F_{q^2}.

Closed forms are compared for all n up to --symbolic-n; brute-force orbits
are compared orbit by orbit within the default BFS bounds.
"""

import argparse
import time
from dataclasses import dataclass

from nilcone import enhanced as en
from nilcone import exotic as ex
from nilcone import qcount as qc
from nilcone.combinatorics import enumerate_bipartitions
from nilcone.gf import make_field


@dataclass
class Config:
    symbolic_n: int = 10
    bfs: tuple[tuple[int, int], ...] = ((2, 2), (3, 2))


def main(cfg: Config) -> int:
    bad = 0
    for n in range(cfg.symbolic_n + 1):
        miss = [str(bp) for bp in enumerate_bipartitions(n) if not qc.fini_check(bp)]
        bad += len(miss)
        print(f"closed form n={n}: {len(enumerate_bipartitions(n))} bipartitions, mismatches {miss}")
    for q, top in cfg.bfs:
        fd, fd2 = make_field(q), make_field(q * q)
        for n in range(top + 1):
            t = time.perf_counter()
            for bp in enumerate_bipartitions(n):
                a = ex.exotic_orbit(bp, fd).size
                b = en.representative_orbit(bp, fd2).size
                bad += a != b
                print(f"  q={q} {str(bp):12s} exotic {a:8d}  enhanced(q^2) {b:8d}  {'ok' if a == b else 'MISMATCH'}")
            print(f"BFS n={n} q={q} done in {time.perf_counter() - t:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--symbolic-n", type=int, default=Config.symbolic_n)
    raise SystemExit(main(Config(p.parse_args().symbolic_n)))
