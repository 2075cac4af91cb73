"""Write point files for orbit-of: representatives and random conjugates of each orbit."""

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from nilcone import enhanced as en
from nilcone import exotic as ex
from nilcone import linalg as la
from nilcone.combinatorics import enumerate_bipartitions
from nilcone.gf import make_field


@dataclass
class Config:
    n: int = 2
    q: int = 3
    seed: int = 0
    out: Path = Path("results/points")


def _name(bp) -> str:
    return str(bp).strip("()").replace(";", "_").replace(",", "") or "empty"


def main(cfg: Config) -> None:
    fd = make_field(cfg.q)
    rng = np.random.default_rng(cfg.seed)
    cfg.out.mkdir(parents=True, exist_ok=True)
    for bp in enumerate_bipartitions(cfg.n):
        tag = f"n{cfg.n}_q{cfg.q}_{_name(bp)}"
        pt = en.representative(bp, fd)
        g = la.random_invertible(fd, cfg.n, rng) if cfg.n else la.identity(0)
        (cfg.out / f"enhanced_{tag}.txt").write_text(pt.act(g).to_text())
        xp = ex.exotic_representative(bp, fd)
        h = ex.random_symplectic(fd, xp.space.gram, rng)
        (cfg.out / f"exotic_{tag}.txt").write_text(xp.act(h).to_text())
        print(f"{bp}: wrote enhanced_{tag}.txt and exotic_{tag}.txt")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("-n", type=int, default=Config.n)
    p.add_argument("--q", type=int, default=Config.q)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--out", type=Path, default=Config.out)
    a = p.parse_args()
    main(Config(a.n, a.q, a.seed, a.out))
