"""Time the oracle kernels under both backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]
"""
import argparse
import time

import numpy as np

from relnet import _kernels as K
from relnet.config import default_caps
from relnet.corpus import random_multigraph, two_k4
from relnet.model import Demand
from relnet.oracle import _check_rows, supersets


def bench(fn, args, warmup=1, repeat=5):
    for _ in range(warmup):
        fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases(seed):
    rng = np.random.default_rng(seed)
    G = two_k4()
    rows, rx, ry = _check_rows(G, [Demand(1, 5, 3)], default_caps(), None)
    cand = supersets(G.m, [12, 13])
    xs = np.zeros(G.n, dtype=bool)
    ys = np.zeros(G.n, dtype=bool)
    xs[1] = ys[5] = True
    yield "first_feasible (two_k4, 4096 candidates)", "first_feasible", (G.n, G.eu, G.ev, cand, rows, rx, ry)
    yield "feasible_mask (two_k4, 4096 candidates)", "feasible_mask", (G.n, G.eu, G.ev, cand, rows, rx, ry)
    full = K.fault_rows(G.m, 2)
    yield "xy_connected_rows (two_k4, |F| <= 2)", "xy_connected_rows", (G.n, G.eu, G.ev, np.ones(G.m, dtype=bool), full, xs, ys)
    H = random_multigraph(rng, max_n=8, max_m=14)
    sets = np.arange(1, 1 << (H.n - 1), dtype=np.int64)
    yield f"cut_values (n={H.n}, all sets)", "cut_values", (H.n, H.eu, H.ev, np.ones(H.m, dtype=bool), sets)
    yield f"induced_connected (n={H.n}, all sets)", "induced_connected", (H.n, H.eu, H.ev, sets)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba not installed; only the numpy path is timed")
    print(f"{'kernel':45s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for label, name, call in cases(args.seed):
        t_np = bench(K.kernel(name, "numpy"), call, repeat=args.repeat)
        if K.HAVE_NUMBA:
            t_nb = bench(K.kernel(name, "numba"), call, repeat=args.repeat)
            print(f"{label:45s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {t_np / t_nb:7.1f}x")
        else:
            print(f"{label:45s} {t_np * 1e3:9.2f}ms {'-':>10s}")


if __name__ == "__main__":
    main()
