"""Certify the circuit polynomials against many term orders for one input.

Every induced lex order (when n <= 8) plus a batch of seeded weight orders;
prints per-kind pass counts and the slowest order.

    python scripts/order_sweep.py data/k4.json --weights 50 --jobs 4
"""

import argparse
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from bcring.cli import read_input
from bcring.verify import ALL_LEX_MAX_N, check_degen, parse_order_spec


def _one(args):
    path, spec, seed, k = args
    m = read_input(path).matroid()
    job = parse_order_spec(spec, m.n, seed)[k]
    t0 = time.perf_counter()
    rec = check_degen(m, [job])[0]
    return rec, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("file")
    ap.add_argument("--weights", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    m = read_input(args.file).matroid()
    items = ([] if m.n > ALL_LEX_MAX_N else ["all-lex"]) + [f"weight:{args.weights}"]
    spec = ",".join(items)
    count = len(parse_order_spec(spec, m.n, args.seed))
    work = [(args.file, spec, args.seed, k) for k in range(count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_one, work))
    else:
        results = [_one(w) for w in work]

    tally = Counter()
    for rec, _ in results:
        tally[(rec["order"]["kind"], rec["status"])] += 1
        if rec["status"] != "pass":
            print(json.dumps(rec))
    for (kind, status), k in sorted(tally.items()):
        print(f"{kind:7s} {status}: {k}")
    rec, dt = max(results, key=lambda r: r[1])
    print(f"slowest {dt:.3f}s {json.dumps(rec['order'])}")
    raise SystemExit(0 if all(r["status"] == "pass" for r, _ in results) else 1)


if __name__ == "__main__":
    main()
