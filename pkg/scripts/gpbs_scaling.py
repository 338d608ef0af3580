"""Circuit cost of amplitude evaluation as the qubit count grows.

Families: W_n (one class), GHZ_n (one class) and sparse random states with
a fixed number of distinct amplitudes. For each n the script reports the
class count k, circuit depth and gate totals, the gates touched by one
amplitude query, and whether k <= n and depth <= n^2 hold. Nothing here
enumerates 2^n entries, so n can go well past dense limits.

    python3 scripts/gpbs_scaling.py --sizes 8 12 16 20 24
"""
import argparse
import time

import numpy as np

from ctns.decompose import assemble, group_amplitudes
from ctns.sampler import amplitude, gpbs_report


def w_classes(n, rng):
    return group_amplitudes(n, [1 << k for k in range(n)], np.ones(n))


def ghz_classes(n, rng):
    return group_amplitudes(n, [0, (1 << n) - 1], [1, 1])


def sparse_classes(n, rng, support=32, levels=4):
    support = min(support, 1 << n)
    idx = rng.choice(1 << n, size=support, replace=False)
    palette = rng.normal(size=levels) + 1j * rng.normal(size=levels)
    return group_amplitudes(n, idx, palette[rng.integers(0, levels, size=support)])


FAMILIES = {"w": w_classes, "ghz": ghz_classes, "sparse": sparse_classes}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 12, 16, 20])
    ap.add_argument("--families", nargs="+", choices=sorted(FAMILIES), default=sorted(FAMILIES))
    ap.add_argument("--queries", type=int, default=20)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'family':>7} {'n':>3} {'k':>3} {'depth':>5} {'gates':>6} {'gates/query':>11} {'bounds':>6} {'build s':>8}")
    for fam in args.families:
        for n in args.sizes:
            t0 = time.perf_counter()
            dec = assemble(n, FAMILIES[fam](n, rng), materialize=False, form="auto")
            built = time.perf_counter() - t0
            rep = gpbs_report(dec, size_bound=lambda m: m, depth_bound=lambda m: m * m)
            touched = []
            for x in rng.integers(0, 1 << n, size=args.queries):
                counter = [0]
                amplitude(dec, format(int(x), f"0{n}b"), counter)
                touched.append(counter[0])
            print(f"{fam:>7} {n:3d} {rep.k:3d} {rep.max_depth:5d} {rep.total_size:6d} "
                  f"{np.mean(touched):11.1f} {'ok' if rep.bounds_ok else 'over':>6} {built:8.3f}")


if __name__ == "__main__":
    main()
