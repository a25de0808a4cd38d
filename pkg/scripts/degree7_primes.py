"""Recompute the degree-7 table at several primes and check the ranks agree.

    python scripts/degree7_primes.py --primes 1000003 101 65537 --out results/degree7.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from symdias.pipeline import degree7_table
from symdias.symrep import format_decomposition, partition_label


@dataclass
class Config:
    primes: list = field(default_factory=lambda: [1000003, 101])
    workers: int = 1
    out: str | None = None


def main(cfg: Config):
    runs = []
    for p in cfg.primes:
        t0 = time.perf_counter()
        table = degree7_table(p, cfg.workers)
        runs.append({"prime": p, "seconds": round(time.perf_counter() - t0, 2), **table.rows(),
                     "total": table.total_new, "decomposition": format_decomposition(table.decomposition())})
        print(f"p = {p}: total {table.total_new}, {runs[-1]['decomposition']} ({runs[-1]['seconds']} s)")
    labels = [partition_label(r.partition) for r in table.reports]
    agree = all({k: v for k, v in r.items() if k not in ("prime", "seconds")} ==
                {k: v for k, v in runs[0].items() if k not in ("prime", "seconds")} for r in runs)
    print("ranks agree across primes:", agree)
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "partitions": labels, "runs": runs}, indent=1))
    return agree


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=Config().primes)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    args = ap.parse_args()
    raise SystemExit(0 if main(Config(args.primes, args.workers, args.out)) else 1)
