"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--n 14] [--repeat 3]

The first numba call per kernel is reported separately (JIT compilation or
cache load) and excluded from the steady-state timing.
"""

import argparse
import random
import time

import numpy as np

from tangletree import _kernels as K


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases(n, rng):
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(n)]
    verts = sorted({v for e in edges for v in e})
    inc = np.array([sum(1 << i for i, e in enumerate(edges) if v in e) for v in verts], dtype=np.int64)
    matrix = np.array([[rng.randrange(5) for _ in range(n)] for _ in range(5)], dtype=np.int64)
    table = K.graph_order_table_numpy(inc, n)
    sub_n = min(n, 11)
    sub_table = K.graph_order_table_numpy(inc & ((1 << sub_n) - 1), sub_n)
    full = (1 << n) - 1
    smalls = np.array([rng.getrandbits(n) & rng.getrandbits(n) for _ in range(400)], dtype=np.int64)
    cands = np.array([rng.getrandbits(n) for _ in range(2000)], dtype=np.int64)
    members = np.array([rng.getrandbits(n) for _ in range(60)], dtype=np.int64)
    return {
        "graph_order_table": ((inc, n), table),
        "rank_table": ((matrix, 5), None),
        "submodular_violations": ((sub_table, sub_n, 100), None),
        "covers": ((smalls, len(smalls), 0, full), None),
        "nested_with_all": ((cands, members, full), None),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=14)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    rng = random.Random(0)
    print(f"{'kernel':<24}{'numpy s':>10}{'numba s':>10}{'first call s':>14}{'speedup':>9}  agree")
    for name, (argv, _) in cases(args.n, rng).items():
        np_fn = getattr(K, f"{name}_numpy")
        nb_fn = getattr(K, f"{name}_numba")
        t0 = time.perf_counter()
        nb_fn(*argv)
        first = time.perf_counter() - t0
        t_np, out_np = best_of(lambda: np_fn(*argv), args.repeat)
        t_nb, out_nb = best_of(lambda: nb_fn(*argv), args.repeat)
        agree = np.array_equal(np.asarray(out_np), np.asarray(out_nb))
        print(f"{name:<24}{t_np:>10.4f}{t_nb:>10.4f}{first:>14.3f}{t_np / max(t_nb, 1e-9):>9.1f}  {agree}")


if __name__ == "__main__":
    main()
