"""Time the numba and numpy kernels on the same Weyl groups.

    python3 benchmarks/bench_kernels.py [--groups A3,A4,A5,C3,C4] [--repeat 3]

Only the Bruhat-order and KL-column kernels have two backends; everything
else is exact rational arithmetic in pure Python.  The first numba call pays
for compilation, so it is timed separately as "warmup".
"""
import argparse
import time

import numpy as np

from wsc import parse_algebra
from wsc.kl import KLTable
from wsc.weyl import Levi, LeviBlock, WeylGroup, full_levi
from wsc._accel import NUMBA_ENABLED


def make_group(label):
    kind, n = label[0], int(label[1:])
    if kind == "A":   # S_{n+1}
        return WeylGroup(Levi(n + 1, 0, (LeviBlock("A", tuple(range(n + 1))),)))
    if kind == "C":   # even Weyl group of osp(2|2n)
        return WeylGroup(full_levi(parse_algebra(f"osp(2|{2 * n})")))
    raise SystemExit(f"unknown group {label}")


def all_columns(group, backend):
    tab = KLTable(group, backend=backend, longest_shortcut=False)
    for w in np.argsort(group.length, kind="stable"):
        tab.column(int(w))
    return tab


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", default="A3,A4,A5,C3,C4")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if NUMBA_ENABLED else [])
    if not NUMBA_ENABLED:
        print("numba unavailable or disabled; timing numpy only")
    print(f"{'group':>6} {'|W|':>6} {'kernel':>8} " + " ".join(f"{b:>10}" for b in backends))
    for label in args.groups.split(","):
        g = make_group(label)
        if "numba" in backends:
            t0 = time.perf_counter()
            g.bruhat(backend="numba")
            all_columns(make_group("A2"), "numba")
            print(f"{label:>6} {len(g):>6} {'warmup':>8} {'':>10} {time.perf_counter() - t0:>9.3f}s")
        rows = {
            "bruhat": lambda b: best_of(lambda: g.bruhat(backend=b), args.repeat),
            "kl": lambda b: best_of(lambda: all_columns(g, b), args.repeat),
        }
        for kernel, timer in rows.items():
            cells = " ".join(f"{timer(b):>9.3f}s" for b in backends)
            print(f"{label:>6} {len(g):>6} {kernel:>8} {cells}")
        if "numba" in backends:
            a, b = all_columns(g, "numpy"), all_columns(g, "numba")
            same = all(np.array_equal(a.column(w), b.column(w)) for w in range(len(g)))
            same &= np.array_equal(g.bruhat(backend="numpy"), g.bruhat(backend="numba"))
            print(f"{label:>6} {'':>6} {'agree':>8} {same}")


if __name__ == "__main__":
    main()
