#!/usr/bin/env python3
"""Undetected error rate vs BLER for flooding BP on the PG code.

Runs BP-8 and BP-32 with early termination; undetected errors are
trials whose final decision is a valid codeword different from the
transmitted one.
"""

import argparse
import os

from ensldpc.sim import StopRule, measure_uer


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--ebn0", default="2:0.5:3.5")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    from ensldpc.cli import parse_grid
    grid = parse_grid(args.ebn0)
    stop = (StopRule(10**9, 20_000) if args.quick
            else StopRule(10**9, 2_000_000))
    os.makedirs(args.outdir, exist_ok=True)
    results = measure_uer("pg273", grid, [8, 32], seed=args.seed, stop=stop)
    for iters, res in results.items():
        path = os.path.join(args.outdir, f"pg273_uer_bp{iters}.csv")
        with open(path, "w") as fh:
            fh.write(res.to_csv())
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
