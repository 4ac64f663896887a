#!/usr/bin/env python3
"""Ensemble recovery probability rho vs Eb/N0 on the (132,66) QC code.

rho is the probability the ensemble decodes correctly given the first
constituent decoder failed; the CSV also carries the BLER-ratio
approximation rho_ratio = 1 - BLER_ensemble / BLER_dec1.
"""

import argparse
import os

from ensldpc.sim import ExperimentConfig, StopRule, run_sweep

SETUPS = {
    "sed": dict(method="sed", iters=4, n_l=11),
    "aed": dict(method="aed", iters=8),
    "ned": dict(method="ned", iters=8),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--ebn0", default="1:0.5:5")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    from ensldpc.cli import parse_grid
    grid = parse_grid(args.ebn0)
    stop = StopRule(10**9, 5_000) if args.quick else StopRule(10**9, 100_000)
    os.makedirs(args.outdir, exist_ok=True)
    for name, kw in SETUPS.items():
        for m in (4, 8):
            cfg = ExperimentConfig(code="5g132", ebn0_db=grid, stop=stop,
                                   seed=args.seed, m=m, **kw)
            res = run_sweep(cfg)
            path = os.path.join(args.outdir, f"5g132_rho_{name}_m{m}.csv")
            with open(path, "w") as fh:
                fh.write(res.to_csv())
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
