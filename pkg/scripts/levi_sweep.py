"""Levi section checks for both cones, one line per bipartition."""

import argparse
from dataclasses import dataclass

from nilcone import suites
from nilcone.combinatorics import enumerate_bipartitions


@dataclass
class Config:
    max_n: int = 3
    q: int = 2
    cone: str = "both"
    seed: int = 0
    samples: int = 100


def main(cfg: Config) -> int:
    run = suites.RunConfig(seed=cfg.seed, samples=cfg.samples)
    failures = 0
    for n in range(cfg.max_n + 1):
        for bp in enumerate_bipartitions(n):
            rows = []
            if cfg.cone in ("both", "enhanced"):
                rows.append(("enhanced", suites.levi_enhanced(bp, cfg.q, run)))
            if cfg.cone in ("both", "exotic"):
                rows.append(("exotic", suites.levi_exotic(bp, cfg.q, run)))
            for cone, checks in rows:
                bad = [c for c in checks if not c.passed]
                failures += len(bad)
                print(f"{cone:8s} {str(bp):14s} {len(checks)} checks {'ok' if not bad else bad}")
    return 1 if failures else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--q", type=int, default=Config.q)
    p.add_argument("--cone", choices=("both", "enhanced", "exotic"), default=Config.cone)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    raise SystemExit(main(Config(a.max_n, a.q, a.cone, a.seed)))
