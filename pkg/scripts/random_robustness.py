"""Push seeded random rational matrices through run_all and tally failures.

    python scripts/random_robustness.py --seed 2026 --count 100
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from bcring.fixtures import random_matroids
from bcring.verify import RunConfig, run_all


@dataclass
class SweepConfig:
    seed: int = 2026
    count: int = 100
    max_d: int = 3
    max_n: int = 7
    bound: int = 5


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    ap.add_argument("--out", help="write failing reports here as JSON")
    args = ap.parse_args()
    cfg = SweepConfig(args.seed, args.count, args.max_d, args.max_n, args.bound)

    start = time.perf_counter()
    failing = []
    worst = (0.0, "")
    for m in random_matroids(cfg.seed, cfg.count, max_d=cfg.max_d, max_n=cfg.max_n, bound=cfg.bound):
        t0 = time.perf_counter()
        report = run_all(m, RunConfig(seed=cfg.seed))
        dt = time.perf_counter() - t0
        worst = max(worst, (dt, f"{m.name} (n={m.n}, d={m.d})"))
        if not report.ok:
            failing.append(report.to_json())
            print(f"FAIL {m.name}: {report.failures()[0]['id']}")
    total = time.perf_counter() - start
    print(f"{cfg.count - len(failing)}/{cfg.count} passed in {total:.1f}s; slowest {worst[1]} {worst[0]:.2f}s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"config": asdict(cfg), "failing": failing}, fh, indent=2)
    raise SystemExit(1 if failing else 0)


if __name__ == "__main__":
    main()
