"""Command-line front end for the ensemble-decoding simulator.

Subcommands:
  simulate             run a Monte-Carlo sweep and write a CSV
  code-info            print code parameters
  check-automorphisms  validate the generated permutation groups

Configuration may come from a flat ``key=value`` file (``--config``);
command-line flags override file values.  Config errors exit with
status 2 and a message naming the offending field.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import sim
from .automorphisms import (is_automorphism, qc_perm, s0_perm, s1_order,
                            s1_perm)
from .bp import TannerGraph, decode_flooding_batch
from .codes import CODE_NAMES, break_qc_symmetry, get_code
from .errors import ConfigError, EnsLdpcError
from .gf2 import rank

GRID_TOL = 1e-9


def parse_grid(text: str) -> tuple:
    """Parse ``start:step:end`` (inclusive) or a comma list of dBs."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"ebn0: expected start:step:end, got {text!r}")
        try:
            start, step, end = (float(p) for p in parts)
        except ValueError:
            raise ConfigError(f"ebn0: non-numeric grid field in {text!r}")
        if step <= 0:
            raise ConfigError("ebn0: step must be positive")
        count = int(np.floor((end - start) / step + GRID_TOL)) + 1
        if count < 1:
            raise ConfigError("ebn0: empty grid")
        return tuple(start + i * step for i in range(count))
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ConfigError(f"ebn0: non-numeric value in {text!r}")


def read_config_file(path: str) -> dict:
    """Flat key=value file; blank lines and #-comments ignored."""
    values = {}
    try:
        with open(path) as fh:
            for ln, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(
                        f"config: line {ln}: expected key=value, got {line!r}")
                key, _, val = line.partition("=")
                values[key.strip().replace("-", "_")] = val.strip()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}")
    return values


def _parse_bool(key: str, val) -> bool:
    if isinstance(val, bool):
        return val
    s = str(val).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {val!r}")


def build_experiment(args) -> tuple:
    """Merge config file + flags into (ExperimentConfig, out_path)."""
    file_vals = read_config_file(args.config) if args.config else {}

    def pick(key, flag_val, cast, default):
        if flag_val is not None:
            return flag_val
        if key in file_vals:
            raw = file_vals[key]
            if cast is bool:
                return _parse_bool(key, raw)
            try:
                return cast(raw)
            except ValueError:
                raise ConfigError(f"{key}: cannot parse {raw!r}")
        return default

    code = pick("code", args.code, str, None)
    if code is None:
        raise ConfigError("code: required")
    if code not in CODE_NAMES:
        raise ConfigError(
            f"code: unknown code {code!r}; known: {', '.join(CODE_NAMES)}")
    method = pick("method", args.method, str, None)
    if method is None:
        raise ConfigError("method: required")
    grid_text = pick("ebn0", args.ebn0, str, None)
    if grid_text is None:
        raise ConfigError("ebn0: required")

    stop = sim.StopRule(
        target_errors=pick("target_errors", args.target_errors, int, 100),
        max_trials=pick("max_trials", args.max_trials, int, 10_000_000))
    cfg = sim.ExperimentConfig(
        code=code, method=method,
        m=pick("m", args.M, int, 8),
        iters=pick("iters", args.iters, int, 8),
        n_l=pick("n_l", args.n_l, int, None),
        sigma2_ned=pick("sigma2_ned", args.sigma2_ned, float, None),
        ebn0_db=parse_grid(grid_text),
        stop=stop,
        seed=pick("seed", args.seed, int, 0),
        early_stop=pick("early_stop", args.early_stop, bool, True),
        random_messages=pick("random_messages", args.random_messages,
                             bool, False),
        h_variant=pick("h_variant", args.h_variant, str, "default"))
    out = pick("out", args.out, str, None)
    return cfg, out


def cmd_simulate(args) -> int:
    cfg, out = build_experiment(args)
    result = sim.run_sweep(cfg)
    csv_text = result.to_csv()
    if out:
        with open(out, "w") as fh:
            fh.write(csv_text)
    print(csv_text, end="")
    return 0


def cmd_code_info(args) -> int:
    code, pool = _lookup(args.code)
    print(f"name       : {code.name}")
    print(f"N          : {code.n}")
    print(f"K          : {code.k}")
    print(f"rate       : {code.rate:.3f}")
    print(f"structure  : {code.structure}"
          + (f" (Z={code.z})" if code.z else ""))
    print(f"h_default  : {code.h_default.shape[0]} x {code.h_default.shape[1]}"
          f", rank {rank(code.h_default)}")
    if pool is not None:
        print(f"check pool : {pool.checks.shape[0]} rows of weight"
              f" {pool.min_weight}")
    groups = {"cyclic": "S0 (cyclic shifts), S1 (index doubling)",
              "quasi-cyclic": "QC (intra-block shifts)"}
    print(f"perm groups: {groups.get(code.structure, 'none')}")
    return 0


def cmd_check_automorphisms(args) -> int:
    code, _ = _lookup(args.code)
    rng = np.random.default_rng(0)
    failed = 0
    if code.structure == "cyclic":
        n = code.n
        s0 = [s0_perm(n, d) for d in range(n)]
        ok = sum(is_automorphism(p, code) for p in s0)
        print(f"S0: {ok}/{n} pass")
        failed += n - ok
        order = s1_order(n)
        s1 = [s1_perm(n, d) for d in range(order)]
        ok = sum(is_automorphism(p, code) for p in s1)
        print(f"S1: {ok}/{order} pass")
        failed += order - ok
        probe = _equivariance_probe(code.h_default, s0_perm(n, 1), rng)
        print(f"S0 equivariance probe on h_default: "
              f"{'equivariant' if probe else 'diverse'}")
    elif code.structure == "quasi-cyclic":
        z = code.z
        qs = [qc_perm(code.n, z, d) for d in range(z)]
        ok = sum(is_automorphism(p, code) for p in qs)
        print(f"QC: {ok}/{z} pass")
        failed += z - ok
        h = break_qc_symmetry(code.h_default, [0, 1, 2])
        probe = _equivariance_probe(h, qc_perm(code.n, z, 1), rng)
        print(f"QC equivariance probe on row-deleted matrix: "
              f"{'equivariant' if probe else 'diverse'}")
    else:
        print("no generated groups for this structure")
    return 0 if failed == 0 else 1


def _equivariance_probe(h, perm, rng, trials: int = 64) -> bool:
    """True when BP commutes with the permutation on random LLRs."""
    from .automorphisms import apply_perm, inverse
    graph = TannerGraph(h)
    l_ch = rng.normal(0.0, 2.0, size=(trials, h.shape[1]))
    a, _, _, _ = decode_flooding_batch(graph, l_ch, 4, early_stop=False)
    b, _, _, _ = decode_flooding_batch(graph, apply_perm(perm, l_ch), 4,
                                       early_stop=False)
    return bool((apply_perm(inverse(perm), b) == a).all())


def _lookup(name: str):
    if name not in CODE_NAMES:
        raise ConfigError(
            f"code: unknown code {name!r}; known: {', '.join(CODE_NAMES)}")
    return get_code(name)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ensldpc",
        description="Ensemble decoding of short LDPC codes")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run a Monte-Carlo sweep")
    s.add_argument("--config", help="key=value config file")
    s.add_argument("--code", choices=None)
    s.add_argument("--method")
    s.add_argument("--M", type=int, dest="M")
    s.add_argument("--iters", type=int)
    s.add_argument("--n-l", type=int, dest="n_l")
    s.add_argument("--sigma2-ned", type=float, dest="sigma2_ned")
    s.add_argument("--ebn0", help="start:step:end (inclusive) or comma list")
    s.add_argument("--target-errors", type=int, dest="target_errors")
    s.add_argument("--max-trials", type=int, dest="max_trials")
    s.add_argument("--seed", type=int)
    s.add_argument("--out", help="CSV output path")
    s.add_argument("--early-stop", dest="early_stop", default=None,
                   action="store_true")
    s.add_argument("--no-early-stop", dest="early_stop", default=None,
                   action="store_false")
    s.add_argument("--random-messages", dest="random_messages", default=None,
                   action="store_true")
    s.add_argument("--h-variant", dest="h_variant",
                   choices=("default", "systematic", "random-minweight"))
    s.set_defaults(func=cmd_simulate)

    i = sub.add_parser("code-info", help="print code parameters")
    i.add_argument("code")
    i.set_defaults(func=cmd_code_info)

    c = sub.add_parser("check-automorphisms",
                       help="validate permutation groups against a code")
    c.add_argument("code")
    c.set_defaults(func=cmd_check_automorphisms)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EnsLdpcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
