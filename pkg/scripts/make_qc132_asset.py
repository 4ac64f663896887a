#!/usr/bin/env python3
"""Generate the (132, 66) quasi-cyclic parity-check asset.

Seeded search over 6x12 base matrices with lifting size Z = 11:
column degree 3, row degree 6, no length-4 cycles in the lifted graph,
and full GF(2) rank 66.  The first matrix passing all checks is written
to src/ensldpc/data/5g_132_66.alist.
"""

from __future__ import annotations

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from ensldpc import gf2
from ensldpc.alist import save_alist
from ensldpc.codes import qc_expand

Z = 11
BASE_ROWS, BASE_COLS = 6, 12
COL_DEG, ROW_DEG = 3, 6
SEED = 20240905


def candidate_base(rng: np.random.Generator) -> np.ndarray | None:
    """Random column-degree-3 / row-degree-6 mask with random shifts."""
    base = -np.ones((BASE_ROWS, BASE_COLS), dtype=np.int64)
    slots = np.repeat(np.arange(BASE_ROWS), ROW_DEG)
    rng.shuffle(slots)
    for c in range(BASE_COLS):
        rows = slots[c * COL_DEG:(c + 1) * COL_DEG]
        if len(set(rows)) != COL_DEG:
            return None
        for r in rows:
            base[r, c] = rng.integers(0, Z)
    return base


def has_four_cycle(h: np.ndarray) -> bool:
    overlap = h.astype(np.int64) @ h.T.astype(np.int64)
    np.fill_diagonal(overlap, 0)
    return bool((overlap > 1).any())


def main() -> None:
    rng = np.random.default_rng(SEED)
    for attempt in range(1, 100001):
        base = candidate_base(rng)
        if base is None:
            continue
        h = qc_expand(base, Z)
        if has_four_cycle(h):
            continue
        if gf2.rank(h) != 66:
            continue
        out = pathlib.Path(__file__).resolve().parents[1] / "src" / "ensldpc" \
            / "data" / "5g_132_66.alist"
        out.write_text(save_alist(h))
        print(f"attempt {attempt}: wrote {out}")
        print("base matrix:")
        print(base)
        return
    raise SystemExit("no suitable base matrix found")


if __name__ == "__main__":
    main()
