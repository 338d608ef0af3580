"""Build the W state three ways and check that they agree.

1. Boolean state: synthesize f_W and post-select its output on <1|.
2. Bond-dimension-2 chain closed by <0| and <1|.
3. Decomposition of the dense vector (one coefficient class).

Then draw seeded samples from the decomposition.

    python3 scripts/w_state_demo.py --n 5 --samples 3000
"""
import argparse
from collections import Counter

import numpy as np

from ctns.boolfun import anf_transform, format_anf
from ctns.decompose import build_ctns
from ctns.dense import approx_equal
from ctns.generators import named_state
from ctns.network import contract_network
from ctns.sampler import gpbs_report, sample
from ctns.states import w_mps_network, w_truth_table
from ctns.synthesis import boolean_state_network


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    n = args.n

    f = w_truth_table(n)
    print(f"f_W for n={n}: ANF has {len(anf_transform(f).monomials)} monomials")
    if n <= 4:
        print("  ", format_anf(anf_transform(f)))

    want = named_state("w", n=n)
    builds = {
        "boolean (minterm form)": boolean_state_network(f, form="minterm"),
        "mps chain": w_mps_network(n),
        "decomposition": build_ctns(want).network,
    }
    for name, net in builds.items():
        ok, lam = approx_equal(contract_network(net), want, up_to_global_scalar=True)
        print(f"{name:24s} nodes={len(net.nodes):4d}  equals W: {ok}  scalar={lam}")

    dec = build_ctns(want)
    rep = gpbs_report(dec)
    print(f"classes k={rep.k}, deepest circuit={rep.max_depth}, total gates={rep.total_size}")

    counts = Counter(sample(dec, args.seed, args.samples))
    expect = args.samples / n
    sigma = np.sqrt(args.samples * (1 / n) * (1 - 1 / n))
    print(f"{args.samples} samples, expected {expect:.1f} each (sigma {sigma:.1f}):")
    for s in sorted(counts):
        print(f"  {s}  {counts[s]:6d}  z={(counts[s] - expect) / sigma:+.2f}")


if __name__ == "__main__":
    main()
