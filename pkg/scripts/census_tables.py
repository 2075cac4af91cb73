"""Write closed-form census tables (JSON and CSV) for every cone and n up to a bound."""

import argparse
import json
from dataclasses import dataclass, field
from pathlib import Path

from nilcone.cli import CONES, census, census_csv


@dataclass
class Config:
    max_n: int = 6
    qs: list[int] = field(default_factory=lambda: [2, 3, 4, 5])
    out: Path = Path("results/census")


def main(cfg: Config) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    for cone in CONES:
        for n in range(cfg.max_n + 1):
            table = census(cone, n, cfg.qs)
            stem = cfg.out / f"{cone}_n{n}"
            stem.with_suffix(".json").write_text(json.dumps(table, indent=2) + "\n")
            stem.with_suffix(".csv").write_text(census_csv(table))
            flag = "ok" if table["total"]["matches"] else "MISMATCH"
            print(f"{cone:9s} n={n}: {len(table['rows']):3d} orbits, total {table['total']['counts']} {flag}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--q", type=int, action="append", dest="qs")
    p.add_argument("--out", type=Path, default=Config.out)
    a = p.parse_args()
    main(Config(a.max_n, a.qs or Config().qs, a.out))
