"""Decompose random states and contract them back.

For each n, draw random states (generic complex vectors, or vectors over a
small amplitude palette with zeros), build the circuit network, contract
it, and report the worst deviation, the mean class count and timings.

    python3 scripts/round_trip.py --sizes 2 3 4 5 6 --trials 50
"""
import argparse
import time

import numpy as np

from ctns.decompose import build_ctns
from ctns.network import contract_network


def random_state(rng, n, palette):
    if palette:
        levels = rng.normal(size=palette) + 1j * rng.normal(size=palette)
        v = levels[rng.integers(0, palette, size=1 << n)] * (rng.random(1 << n) > 0.3)
        v[0] = v[0] or 1
    else:
        v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v.reshape((2,) * n)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--palette", type=int, default=0,
                    help="draw amplitudes from this many values (0: generic states)")
    ap.add_argument("--form", choices=("anf", "minterm", "auto"), default="auto")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'trials':>6} {'max err':>10} {'mean k':>7} {'nodes':>7} {'build s':>8} {'contract s':>10}")
    for n in args.sizes:
        errs, ks, nodes, tb, tc = [], [], [], 0.0, 0.0
        for _ in range(args.trials):
            psi = random_state(rng, n, args.palette)
            t0 = time.perf_counter()
            dec = build_ctns(psi, form=args.form, materialize=True)
            t1 = time.perf_counter()
            got = contract_network(dec.network)
            t2 = time.perf_counter()
            tb, tc = tb + t1 - t0, tc + t2 - t1
            errs.append(np.max(np.abs(got - psi)))
            ks.append(dec.k)
            nodes.append(len(dec.network.nodes))
        print(f"{n:3d} {args.trials:6d} {max(errs):10.2e} {np.mean(ks):7.1f} {np.mean(nodes):7.0f} "
              f"{tb / args.trials:8.4f} {tc / args.trials:10.4f}")


if __name__ == "__main__":
    main()
