"""Reader/writer for the alist sparse binary matrix exchange format.

Layout: line 1 holds "N M" (columns, rows), line 2 the maximum column
and row degrees, then N column degrees, M row degrees, N column
adjacency lines and M row adjacency lines.  Positions are 1-based;
zero padding entries are permitted and ignored on input.
"""

from __future__ import annotations

import numpy as np

from .errors import InconsistentDegrees, ParseError
from .gf2 import as_binary


def load_alist(text: str) -> np.ndarray:
    """Parse alist text into an M x N uint8 matrix (rows are checks)."""
    lines = [ln for ln in text.splitlines()]
    pos = 0

    def next_ints(expect=None):
        nonlocal pos
        while pos < len(lines):
            stripped = lines[pos].strip()
            pos += 1
            if stripped:
                try:
                    vals = [int(tok) for tok in stripped.split()]
                except ValueError:
                    raise ParseError("non-integer token", line=pos)
                if expect is not None and len(vals) != expect:
                    raise ParseError(
                        f"expected {expect} integers, got {len(vals)}", line=pos
                    )
                return vals
        raise ParseError("unexpected end of file", line=pos)

    n, m = next_ints(expect=2)
    if n < 1 or m < 1:
        raise ParseError("dimensions must be positive", line=1)
    max_col_deg, max_row_deg = next_ints(expect=2)
    col_degs = next_ints(expect=n)
    row_degs = next_ints(expect=m)
    if col_degs and max(col_degs) > max_col_deg:
        raise InconsistentDegrees("column degree exceeds stated maximum", line=3)
    if row_degs and max(row_degs) > max_row_deg:
        raise InconsistentDegrees("row degree exceeds stated maximum", line=4)

    h = np.zeros((m, n), dtype=np.uint8)
    for col in range(n):
        entries = next_ints()
        entries = [e for e in entries if e != 0]
        if len(entries) != col_degs[col]:
            raise InconsistentDegrees(
                f"column {col} lists {len(entries)} entries, degree says "
                f"{col_degs[col]}", line=pos,
            )
        for e in entries:
            if not 1 <= e <= m:
                raise ParseError(f"row index {e} out of range", line=pos)
            h[e - 1, col] = 1
    for row in range(m):
        entries = [e for e in next_ints() if e != 0]
        if len(entries) != row_degs[row]:
            raise InconsistentDegrees(
                f"row {row} lists {len(entries)} entries, degree says "
                f"{row_degs[row]}", line=pos,
            )
        for e in entries:
            if not 1 <= e <= n:
                raise ParseError(f"column index {e} out of range", line=pos)
            if h[row, e - 1] != 1:
                raise InconsistentDegrees(
                    f"row list entry ({row},{e - 1}) missing from column lists",
                    line=pos,
                )
    if int(h.sum()) != sum(row_degs):
        raise InconsistentDegrees("column and row adjacency lists disagree")
    return h


def save_alist(m) -> str:
    """Serialize an M x N binary matrix to alist text (no zero padding)."""
    h = as_binary(m)
    n_rows, n_cols = h.shape
    col_lists = [list(np.nonzero(h[:, c])[0] + 1) for c in range(n_cols)]
    row_lists = [list(np.nonzero(h[r, :])[0] + 1) for r in range(n_rows)]
    out = [
        f"{n_cols} {n_rows}",
        f"{max((len(c) for c in col_lists), default=0)} "
        f"{max((len(r) for r in row_lists), default=0)}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    out += [" ".join(str(e) for e in c) for c in col_lists]
    out += [" ".join(str(e) for e in r) for r in row_lists]
    return "\n".join(out) + "\n"
