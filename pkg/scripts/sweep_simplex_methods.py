#!/usr/bin/env python3
"""BLER curves for every decoding method on the (63,6) simplex code.

Writes one CSV per method into --outdir.  The untagged ensemble methods
(bp, mbbp, ned, sbp) run on the seeded minimum-weight parity-check
matrix; aed and sed run on the systematic matrix, matching the setups
the curves are usually reported for.  --quick lowers the error targets
for a fast smoke run.
"""

import argparse
import os

from ensldpc.sim import ExperimentConfig, StopRule, run_sweep

SETUPS = {
    "ml-oracle": dict(method="ml-oracle"),
    "bp": dict(method="bp", iters=8, h_variant="random-minweight"),
    "lbp": dict(method="lbp", iters=4, n_l=1, h_variant="random-minweight"),
    "aed": dict(method="aed", m=8, iters=8),
    "sed": dict(method="sed", m=8, iters=4, n_l=1),
    "mbbp": dict(method="mbbp", m=8, iters=8),
    "ned": dict(method="ned", m=8, iters=8, h_variant="random-minweight"),
    "sbp": dict(method="sbp", m=8, iters=8, h_variant="random-minweight"),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--ebn0", default="0:1:7")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    from ensldpc.cli import parse_grid
    grid = parse_grid(args.ebn0)
    stop = StopRule(30, 20_000) if args.quick else StopRule(200, 2_000_000)
    os.makedirs(args.outdir, exist_ok=True)
    for name, kw in SETUPS.items():
        cfg = ExperimentConfig(code="simplex63", ebn0_db=grid, stop=stop,
                               seed=args.seed, **kw)
        res = run_sweep(cfg)
        path = os.path.join(args.outdir, f"simplex63_{name}.csv")
        with open(path, "w") as fh:
            fh.write(res.to_csv())
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
