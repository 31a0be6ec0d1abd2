"""Compare the numba and numpy brute-force kernels on the rank-2 system.

    python3 benchmarks/bench_kernels.py [--repeat N] [--bits B]

``--bits`` truncates the scan to the first B outcomes (default: all 30).
"""
import argparse
import time

import numpy as np

from mermin_ks import _kernels as K
from mermin_ks.parity import from_relations
from mermin_ks.rank2 import paper_rank2_proof


def bench(fn, masks, n, repeat):
    fn(masks, n)  # compile / warm caches
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(masks, n)
        times.append(time.perf_counter() - t)
    return result, min(times), sum(times) / len(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--bits", type=int, default=None)
    args = ap.parse_args()

    system = from_relations(paper_rank2_proof())
    n = args.bits or len(system.outcomes)
    full = (1 << n) - 1
    masks = np.array([m & full for m in system.masks()], dtype=np.int64)
    masks = masks[masks != 0]

    rows = [("numpy", K.max_exactly_one_numpy)]
    if K.HAVE_NUMBA:
        rows.append(("numba", K.max_exactly_one_numba))
    else:
        print("numba unavailable or disabled; timing numpy only")

    print(f"max exactly-one over 2^{n} assignments, {len(masks)} contexts")
    print(f"{'backend':8s} {'best s':>8s} {'mean s':>8s} {'Massign/s':>10s}  result")
    results = set()
    for name, fn in rows:
        res, best, mean = bench(fn, masks, n, args.repeat)
        results.add(res)
        print(f"{name:8s} {best:8.3f} {mean:8.3f} {(1 << n) / best / 1e6:10.1f}  max={res[0]} x={res[1]}")
    if len(results) != 1:
        raise SystemExit("backends disagree")


if __name__ == "__main__":
    main()
