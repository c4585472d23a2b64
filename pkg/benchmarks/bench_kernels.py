"""Compare the numba and numpy kernel backends on random networks.

    python benchmarks/bench_kernels.py --sizes 30 60 120 --p 0.1 --repeat 3

Prints one row per (size, kernel): best wall time for each backend and the
speedup.  Results are also checked for agreement before timing.
"""

import argparse
import time

import numpy as np

from lateralnet import kernels
from lateralnet.kernels import DIRECTED, LATERAL, arc_adjacency, numpy_impl
from lateralnet.network import random_er


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[30, 60, 120])
    ap.add_argument("--p", type=float, default=0.1)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    nb = kernels.numba_impl
    if nb is None:
        print("numba backend unavailable; nothing to compare")
        return
    print(f"{'n':>5} {'arcs':>6} {'kernel':<22} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for n in args.sizes:
        g = random_er(n, args.p, args.seed)
        s, t = g.src, g.tgt
        for kind in (LATERAL, DIRECTED):
            # warm-up compiles and checks agreement
            h1 = nb.distance_histogram(s, t, n, kind)
            h2 = numpy_impl.distance_histogram(s, t, n, kind)
            assert np.array_equal(h1, h2), "histograms disagree"
            ip, ix = arc_adjacency(s, t, n, kind)
            b1, b2 = nb.brandes(ip, ix), numpy_impl.brandes(ip, ix)
            assert np.allclose(b1, b2, rtol=1e-9, atol=1e-9), "brandes disagrees"
            rows = [
                (f"histogram/{kind}", lambda: nb.distance_histogram(s, t, n, kind),
                 lambda: numpy_impl.distance_histogram(s, t, n, kind)),
                (f"brandes/{kind}", lambda: nb.brandes(ip, ix), lambda: numpy_impl.brandes(ip, ix)),
            ]
            for name, f_nb, f_np in rows:
                a = best_of(f_nb, args.repeat)
                b = best_of(f_np, args.repeat)
                print(f"{n:>5} {g.n_arcs:>6} {name:<22} {a:>10.5f} {b:>10.5f} {b / a:>8.1f}")


if __name__ == "__main__":
    main()
