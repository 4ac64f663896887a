"""Dense GF(2) linear algebra on numpy uint8 arrays.

All matrices are 2-D uint8 arrays with entries in {0, 1}; row/column
semantics follow the usual coding-theory convention (rows are checks
or generators, columns are code positions).
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, InsufficientRank


def as_binary(m) -> np.ndarray:
    """Coerce to a uint8 array of 0/1 values."""
    a = np.asarray(m, dtype=np.uint8)
    if a.max(initial=0) > 1:
        raise ValueError("matrix entries must be in {0, 1}")
    return a


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2).

    Pivots are taken leftmost-column first with topmost-row
    tie-breaking, so the result is canonical for a given input.

    Returns:
        (R, pivot_cols): R is row-equivalent to m, each pivot column
        contains a single 1; pivot_cols lists the pivot columns in order.
    """
    r = as_binary(m).copy()
    n_rows, n_cols = r.shape
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(n_cols):
        if pivot_row >= n_rows:
            break
        sub = r[pivot_row:, col]
        hits = np.nonzero(sub)[0]
        if hits.size == 0:
            continue
        src = pivot_row + hits[0]
        if src != pivot_row:
            r[[pivot_row, src]] = r[[src, pivot_row]]
        # Eliminate in every other row holding a 1 in this column.
        mask = r[:, col].astype(bool)
        mask[pivot_row] = False
        r[mask] ^= r[pivot_row]
        pivot_cols.append(col)
        pivot_row += 1
    return r, pivot_cols


def rank(m) -> int:
    """GF(2) rank of a binary matrix."""
    _, pivots = rref(m)
    return len(pivots)


def nullspace_basis(h) -> np.ndarray:
    """Basis of the right nullspace of h over GF(2).

    Returns a (cols - rank(h)) x cols matrix G whose rows are linearly
    independent and satisfy h @ g == 0 (mod 2).
    """
    h = as_binary(h)
    n = h.shape[1]
    r, pivots = rref(h)
    free = [c for c in range(n) if c not in set(pivots)]
    g = np.zeros((len(free), n), dtype=np.uint8)
    for row, fc in enumerate(free):
        g[row, fc] = 1
        # Back-substitute: pivot variable p must cancel r[i, fc].
        for i, p in enumerate(pivots):
            g[row, p] = r[i, fc]
    return g


def is_codeword(h, c) -> bool:
    """True iff h @ c == 0 over GF(2)."""
    h = as_binary(h)
    c = as_binary(c).ravel()
    if c.shape[0] != h.shape[1]:
        raise DimensionMismatch(
            f"vector length {c.shape[0]} != matrix columns {h.shape[1]}"
        )
    return not ((h @ c.astype(np.int64)) % 2).any()


def syndrome_bits(h, words) -> np.ndarray:
    """Batched syndrome: words is (batch, n); returns (batch, m) in {0,1}."""
    h = as_binary(h)
    w = np.asarray(words, dtype=np.int64)
    return (w @ h.T.astype(np.int64)) % 2


class _IncrementalRank:
    """Incremental GF(2) row-space tracker used by greedy selection."""

    def __init__(self, n_cols: int):
        self.rows: list[np.ndarray] = []  # echelonised rows
        self.pivots: list[int] = []
        self.n_cols = n_cols

    def try_add(self, row) -> bool:
        """Reduce row against the current basis; add it if independent."""
        v = np.array(row, dtype=np.uint8, copy=True)
        for r, p in zip(self.rows, self.pivots):
            if v[p]:
                v ^= r
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        self.rows.append(v)
        self.pivots.append(int(nz[0]))
        return True


def select_full_rank_rows(pool, target_count: int, rng: np.random.Generator) -> list[int]:
    """Pick target_count linearly independent rows from pool.

    Greedy accumulation over an rng-shuffled pool: deterministic for a
    given seeded generator.

    Raises:
        InsufficientRank: the pool spans fewer than target_count dimensions.
    """
    pool = as_binary(pool)
    order = rng.permutation(pool.shape[0])
    tracker = _IncrementalRank(pool.shape[1])
    chosen: list[int] = []
    for idx in order:
        if tracker.try_add(pool[idx]):
            chosen.append(int(idx))
            if len(chosen) == target_count:
                return chosen
    raise InsufficientRank(
        f"pool rank {len(chosen)} < requested {target_count}"
    )
