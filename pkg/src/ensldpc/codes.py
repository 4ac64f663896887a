"""Built-in codes, alternative parity-check bases, and QC helpers.

Three codes are registered for the CLI:

  simplex63 -- the (63, 6) simplex code, dual of the (63, 57) Hamming
               code; h_default is the systematic 57x63 matrix.
  pg273     -- the cyclic (273, 191) LDPC code from a projective-plane
               perfect difference set; h_default is a seeded full-rank
               82-row subset of the 273 circulant shifts.
  5g132     -- a rate-1/2 quasi-cyclic (132, 66) LDPC matrix with
               lifting size Z = 11, shipped as an alist asset (see
               data/5g_132_66.alist and scripts/make_qc132_asset.py).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import gf2
from .alist import load_alist
from .errors import (
    ConstructionFailure,
    IndexOutOfRange,
    PoolTooSmall,
    ShiftOutOfRange,
)

# Fixed seeds so the default parity-check matrices are reproducible.
PG_H_SEED = 20240217
MINWEIGHT_H_SEED = 42


@dataclass(frozen=True)
class CheckPool:
    """Candidate parity-check rows, all of the same (minimum) weight."""

    checks: np.ndarray  # (pool_size, n) uint8
    min_weight: int


@dataclass(frozen=True)
class Code:
    name: str
    n: int
    k: int
    h_default: np.ndarray
    generator: np.ndarray
    structure: str  # "cyclic" | "quasi-cyclic" | "unstructured"
    z: int | None = None

    @property
    def rate(self) -> float:
        return self.k / self.n


# ---------------------------------------------------------------------------
# Small binary-field helpers (polynomial representation, int bit masks).
# ---------------------------------------------------------------------------

def _gf_mul(a: int, b: int, modulus: int, degree: int) -> int:
    top = 1 << degree
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return acc


def _multiplicative_order_of_x(modulus: int, degree: int) -> int:
    v, k = 2, 1
    limit = (1 << degree) - 1
    while v != 1:
        v = _gf_mul(v, 2, modulus, degree)
        k += 1
        if k > limit:
            raise ConstructionFailure("x does not generate the field")
    return k


# ---------------------------------------------------------------------------
# (63, 6) simplex code.
# ---------------------------------------------------------------------------

_GF64_MOD = 0b1000011  # x^6 + x + 1, primitive


def _gf64_powers() -> list[int]:
    pw = [1]
    for _ in range(62):
        pw.append(_gf_mul(pw[-1], 2, _GF64_MOD, 6))
    return pw


def build_simplex_63() -> tuple[Code, CheckPool]:
    """Simplex (63, 6) code with its weight-3 dual-codeword pool.

    Columns of the Hamming parity-check matrix are consecutive powers
    of a primitive element of GF(64), so the code is cyclic.
    """
    powers = _gf64_powers()
    hm = np.zeros((6, 63), dtype=np.uint8)  # Hamming parity check
    for i, val in enumerate(powers):
        for bit in range(6):
            hm[bit, i] = (val >> bit) & 1
    g_hamming = gf2.nullspace_basis(hm)  # 57 x 63
    h_sys, _ = gf2.rref(g_hamming)       # systematic parity check of the simplex
    generator = gf2.nullspace_basis(h_sys)  # 6 x 63

    # Weight-3 Hamming codewords: column triples summing to zero.
    log = {val: i for i, val in enumerate(powers)}
    triples = []
    for i in range(63):
        for j in range(i + 1, 63):
            k = log[powers[i] ^ powers[j]]
            if k > j:
                triples.append((i, j, k))
    pool = np.zeros((len(triples), 63), dtype=np.uint8)
    for row, (i, j, k) in enumerate(triples):
        pool[row, [i, j, k]] = 1

    code = Code("simplex63", 63, 6, h_sys, generator, "cyclic")
    return code, CheckPool(pool, 3)


# ---------------------------------------------------------------------------
# (273, 191) projective-geometry LDPC code.
# ---------------------------------------------------------------------------

_GF4096_MOD = 0b1000001010011  # x^12 + x^6 + x^4 + x + 1, primitive


def _pg_difference_set() -> list[int]:
    """Perfect difference set D in Z_273 via the Singer construction.

    D = { i in [0, 273) : Tr(alpha^i) = 0 } with the trace from
    GF(2^12) down to GF(2^4), Tr(b) = b + b^16 + b^256.
    """
    if _multiplicative_order_of_x(_GF4096_MOD, 12) != 4095:
        raise ConstructionFailure("modulus polynomial is not primitive")

    def sq(v):
        return _gf_mul(v, v, _GF4096_MOD, 12)

    d = []
    val = 1
    for i in range(273):
        b16 = sq(sq(sq(sq(val))))
        b256 = sq(sq(sq(sq(b16))))
        if val ^ b16 ^ b256 == 0:
            d.append(i)
        val = _gf_mul(val, 2, _GF4096_MOD, 12)

    if len(d) != 17:
        raise ConstructionFailure(f"difference set size {len(d)} != 17")
    diffs = set()
    for a in d:
        for b in d:
            if a != b:
                delta = (a - b) % 273
                if delta in diffs:
                    raise ConstructionFailure("repeated difference")
                diffs.add(delta)
    if diffs != set(range(1, 273)):
        raise ConstructionFailure("differences do not cover Z_273 \\ {0}")
    return d


@functools.lru_cache(maxsize=1)
def pg_circulant() -> np.ndarray:
    """Full 273 x 273 circulant whose rows are shifts of the PG incidence."""
    d = _pg_difference_set()
    row0 = np.zeros(273, dtype=np.uint8)
    row0[d] = 1
    return np.stack([np.roll(row0, i) for i in range(273)])


def build_pg_273() -> tuple[Code, CheckPool]:
    circ = pg_circulant()
    pool = CheckPool(circ.copy(), 17)
    rng = np.random.default_rng(PG_H_SEED)
    rows = sorted(gf2.select_full_rank_rows(circ, 82, rng))
    h = circ[rows]
    generator = gf2.nullspace_basis(h)  # 191 x 273
    code = Code("pg273", 273, 191, h, generator, "cyclic")
    return code, pool


# ---------------------------------------------------------------------------
# (132, 66) quasi-cyclic code (alist asset).
# ---------------------------------------------------------------------------

def build_5g_132() -> tuple[Code, None]:
    text = resources.files("ensldpc.data").joinpath("5g_132_66.alist").read_text()
    h = load_alist(text)
    if h.shape != (66, 132):
        raise ConstructionFailure(f"asset has shape {h.shape}, expected (66, 132)")
    generator = gf2.nullspace_basis(h)
    if generator.shape[0] != 66:
        raise ConstructionFailure("asset matrix is not full rank")
    code = Code("5g132", 132, 66, h, generator, "quasi-cyclic", z=11)
    return code, None


# ---------------------------------------------------------------------------
# QC machinery.
# ---------------------------------------------------------------------------

def qc_expand(base, z: int) -> np.ndarray:
    """Lift a base matrix of shift values into a binary QC matrix.

    Entry s >= 0 becomes the z x z identity cyclically right-shifted by
    s (row i holds a 1 at column (i + s) mod z); entry -1 becomes the
    zero block.
    """
    base = np.asarray(base, dtype=np.int64)
    if z < 1:
        raise ShiftOutOfRange(f"lifting size {z} must be >= 1")
    if (base < -1).any() or (base >= z).any():
        raise ShiftOutOfRange("base entries must lie in {-1} u [0, z)")
    rows, cols = base.shape
    h = np.zeros((rows * z, cols * z), dtype=np.uint8)
    eye = np.eye(z, dtype=np.uint8)
    for r in range(rows):
        for c in range(cols):
            s = base[r, c]
            if s >= 0:
                h[r * z:(r + 1) * z, c * z:(c + 1) * z] = np.roll(eye, s, axis=1)
    return h


def break_qc_symmetry(h, delete_rows) -> np.ndarray:
    """Remove the listed rows (strictly increasing indices) from h."""
    h = gf2.as_binary(h)
    rows = list(delete_rows)
    if any(b <= a for a, b in zip(rows, rows[1:])):
        raise IndexOutOfRange("row list must be strictly increasing")
    if any(r < 0 or r >= h.shape[0] for r in rows):
        raise IndexOutOfRange(f"row index outside [0, {h.shape[0]})")
    return np.delete(h, rows, axis=0)


# ---------------------------------------------------------------------------
# Alternative bases from low-weight check pools.
# ---------------------------------------------------------------------------

def mbbp_bases(pool: CheckPool, m_checks: int, count: int,
               rng: np.random.Generator) -> list[np.ndarray]:
    """Draw `count` distinct full-rank m_checks-row matrices from the pool."""
    seen: set[frozenset[int]] = set()
    bases: list[np.ndarray] = []
    attempts = 0
    while len(bases) < count:
        attempts += 1
        if attempts > 50 * count:
            raise PoolTooSmall(
                f"could not form {count} distinct bases from the pool")
        rows = frozenset(gf2.select_full_rank_rows(pool.checks, m_checks, rng))
        if rows in seen:
            continue
        seen.add(rows)
        bases.append(pool.checks[sorted(rows)])
    return bases


def random_minweight_matrix(pool: CheckPool, m_checks: int,
                            seed: int = MINWEIGHT_H_SEED) -> np.ndarray:
    """A single seeded full-rank matrix of minimum-weight checks."""
    rng = np.random.default_rng(seed)
    return mbbp_bases(pool, m_checks, 1, rng)[0]


# ---------------------------------------------------------------------------
# Registry.
# ---------------------------------------------------------------------------

_BUILDERS = {
    "simplex63": build_simplex_63,
    "pg273": build_pg_273,
    "5g132": build_5g_132,
}

CODE_NAMES = tuple(_BUILDERS)


@functools.lru_cache(maxsize=None)
def get_code(name: str) -> tuple[Code, CheckPool | None]:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown code {name!r}; known: {', '.join(_BUILDERS)}")
    return builder()


def encode(code: Code, messages) -> np.ndarray:
    """Map (batch, k) message bits to codewords via the generator."""
    m = np.asarray(messages, dtype=np.int64)
    return ((m @ code.generator.astype(np.int64)) % 2).astype(np.uint8)
