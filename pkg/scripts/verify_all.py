"""Every verification suite at its default size bound; writes one JSON report."""

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from nilcone import suites


@dataclass
class Config:
    qs: tuple[int, ...] = (2, 3)
    threads: int = 1
    out: Path = Path("results/verify_all.json")


def main(cfg: Config) -> int:
    bounds = suites.Bounds()
    run = suites.RunConfig(threads=cfg.threads)
    report = []
    for suite in suites.SUITES:
        for q in ([None] if suite == "symbolic" else cfg.qs):
            n = 8 if suite == "symbolic" else bounds.limit(suite, q)
            t = time.perf_counter()
            checks = suites.run_suite(suite, n, q, cfg=run)
            failed = [c.as_dict() for c in checks if not c.passed]
            secs = time.perf_counter() - t
            report.append({"suite": suite, "n": n, "q": q, "checks": len(checks),
                           "failed": failed, "seconds": round(secs, 2)})
            print(f"{suite:12s} n={n} q={q}: {len(checks)} checks, {len(failed)} failed, {secs:.1f}s")
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps(report, indent=2, default=str) + "\n")
    return 1 if any(r["failed"] for r in report) else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--q", type=int, action="append", dest="qs")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", type=Path, default=Config.out)
    a = p.parse_args()
    raise SystemExit(main(Config(tuple(a.qs or Config.qs), a.threads, a.out)))
