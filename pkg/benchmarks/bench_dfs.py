"""Compiled vs pure-Python longest-path DFS.

    python3 benchmarks/bench_dfs.py [--repeat 3] [--exhaustive]

Each row builds the subset lattice once, then times both kernels on it
and checks they return the same value.
"""
import argparse
import time

from redmax import _kernels
from redmax.lattice import build_lattice

CASES = [(2, 12), (3, 10), (3, 12), (3, 13), (4, 10), (4, 11), (4, 12)]


def best_time(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--exhaustive", action="store_true", help="disable pruning in both kernels")
    args = ap.parse_args()
    if _kernels._dfs_compiled is None:
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'k':>2} {'n':>3} {'M':>4} {'nodes':>10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for k, n in CASES:
        lat = build_lattice(k, n)
        (vp, _, nodes), tp = best_time(lambda: _kernels.run_dfs(lat, args.exhaustive, backend="python"), args.repeat)
        if _kernels._dfs_compiled is None:
            print(f"{k:>2} {n:>3} {vp:>4} {nodes:>10} {tp:>10.4f} {'-':>10} {'-':>8}")
            continue
        (vc, _, _), tc = best_time(lambda: _kernels.run_dfs(lat, args.exhaustive, backend="cython"), args.repeat)
        assert vc == vp, (k, n, vc, vp)
        print(f"{k:>2} {n:>3} {vp:>4} {nodes:>10} {tp:>10.4f} {tc:>10.4f} {tp / max(tc, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
