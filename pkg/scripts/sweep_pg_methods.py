#!/usr/bin/env python3
"""BLER curves for BP, AED and MBBP on the (273,191) PG LDPC code."""

import argparse
import os

from ensldpc.sim import ExperimentConfig, StopRule, run_sweep

SETUPS = {
    "bp": dict(method="bp", iters=8),
    "aed": dict(method="aed", m=8, iters=8),
    "mbbp": dict(method="mbbp", m=8, iters=8),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--ebn0", default="2:0.5:4")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    from ensldpc.cli import parse_grid
    grid = parse_grid(args.ebn0)
    stop = StopRule(30, 10_000) if args.quick else StopRule(150, 1_000_000)
    os.makedirs(args.outdir, exist_ok=True)
    for name, kw in SETUPS.items():
        cfg = ExperimentConfig(code="pg273", ebn0_db=grid, stop=stop,
                               seed=args.seed, **kw)
        res = run_sweep(cfg)
        path = os.path.join(args.outdir, f"pg273_{name}.csv")
        with open(path, "w") as fh:
            fh.write(res.to_csv())
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
