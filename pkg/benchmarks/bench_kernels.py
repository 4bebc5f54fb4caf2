"""Compare the numba kernels against their pure-numpy fallbacks.

Both implementations are called directly in one process, so the
environment switch is not needed; the numba side is warmed up first so
compile time is excluded.  Every timed pair is also checked for equal
output.

    python benchmarks/bench_kernels.py [--repeat 3] [--sizes 10 12 14 16]
    python benchmarks/bench_kernels.py --end-to-end   # also time a sweep in subprocesses
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from lptransversal import _kernels
from lptransversal.generators import _pair_table, random_connected


def adjacency(n, seed):
    g = random_connected(n, 0.35, seed)
    return g.adj_array


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_subset_dp(sizes, repeat):
    rows = []
    for name in ("path_counts", "cycle_counts"):
        fast = getattr(_kernels, f"{name}_numba")
        slow = getattr(_kernels, f"{name}_numpy")
        for n in sizes:
            adj = adjacency(n, seed=n)
            fast(adj)  # compile / load cache
            if not np.array_equal(fast(adj), slow(adj)):
                raise SystemExit(f"{name}: backends disagree at n={n}")
            t_fast = best_of(lambda: fast(adj), repeat)
            t_slow = best_of(lambda: slow(adj), repeat)
            rows.append((name, f"n={n}", t_slow, t_fast))
    return rows


def bench_connectivity_sweep(n, repeat):
    pairs, _ = _pair_table(n)
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    fast, slow = _kernels.is_connected_masks_numba, _kernels.is_connected_masks_numpy
    fast(masks[:8], n, pairs)
    if not np.array_equal(fast(masks, n, pairs), slow(masks, n, pairs)):
        raise SystemExit("is_connected_masks: backends disagree")
    return [("is_connected_masks", f"n={n} ({len(masks)} graphs)",
             best_of(lambda: slow(masks, n, pairs), repeat), best_of(lambda: fast(masks, n, pairs), repeat))]


def end_to_end():
    code = "from lptransversal.generators import connected_graphs; print(len(connected_graphs(7)))"
    out = []
    for label, flag in (("numpy", "1"), ("numba", "")):
        env = dict(os.environ, LPTRANSVERSAL_DISABLE_NUMBA=flag)
        start = time.perf_counter()
        subprocess.run([sys.executable, "-c", code], env=env, check=True, capture_output=True)
        out.append((label, time.perf_counter() - start))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 12, 14, 16])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rows = bench_subset_dp(args.sizes, args.repeat) + bench_connectivity_sweep(6, args.repeat)
    print(f"{'kernel':<20}{'case':<26}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for name, case, slow, fast in rows:
        print(f"{name:<20}{case:<26}{slow:>12.4f}{fast:>12.4f}{slow / fast:>9.1f}x")
    if args.end_to_end:
        print("\nexhaustive n=7 generation in a fresh interpreter:")
        for label, secs in end_to_end():
            print(f"  {label:<6} {secs:8.2f} s")


if __name__ == "__main__":
    main()
