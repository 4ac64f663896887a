"""Code automorphisms: cyclic (S0), doubling (S1) and QC shift groups.

A Permutation stores the scatter map: position i is sent to map[i],
i.e. applying p to a vector v yields out[p.map[i]] = v[i].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    EvenLength,
    InvalidShift,
    NotAnAutomorphism,
)
from .gf2 import is_codeword


@dataclass(frozen=True)
class Permutation:
    n: int
    map: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.map, dtype=np.int64)
        if m.shape != (self.n,) or not np.array_equal(np.sort(m), np.arange(self.n)):
            raise ValueError("map is not a bijection on [0, n)")
        object.__setattr__(self, "map", m)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Permutation)
            and self.n == other.n
            and np.array_equal(self.map, other.map)
        )

    def __hash__(self):
        return hash((self.n, self.map.tobytes()))


def identity(n: int) -> Permutation:
    return Permutation(n, np.arange(n))


def qc_perm(n: int, z: int, d: int) -> Permutation:
    """Blockwise intra-block cyclic shift by d on blocks of size z."""
    if z < 1 or n % z != 0:
        raise InvalidShift(f"lifting size {z} must divide n={n}")
    if not 0 <= d < z:
        raise InvalidShift(f"shift {d} outside [0, {z})")
    i = np.arange(n)
    wraps = (i % z) + d >= z
    return Permutation(n, np.where(wraps, i + d - z, i + d))


def s0_perm(n: int, d: int) -> Permutation:
    """Global cyclic shift by d (QC shift with z = n)."""
    return qc_perm(n, n, d)


def s1_order(n: int) -> int:
    """Multiplicative order of 2 modulo n (n odd)."""
    if n % 2 == 0:
        raise EvenLength("2 is not invertible modulo an even length")
    k, v = 1, 2 % n
    while v != 1:
        v = (v * 2) % n
        k += 1
    return k


def s1_perm(n: int, d: int) -> Permutation:
    """Index-doubling permutation j -> j * 2^d mod n."""
    order = s1_order(n)
    if not 0 <= d <= order:
        raise InvalidShift(f"doubling exponent {d} outside [0, {order}]")
    return Permutation(n, (np.arange(n) * pow(2, d, n)) % n)


def apply_perm(p: Permutation, v) -> np.ndarray:
    """Scatter v through p: out[p.map[i]] = v[i].

    Works on 1-D vectors or on (batch, n) arrays along the last axis.
    """
    v = np.asarray(v)
    if v.shape[-1] != p.n:
        raise DimensionMismatch(f"vector length {v.shape[-1]} != {p.n}")
    out = np.empty_like(v)
    out[..., p.map] = v
    return out


def inverse(p: Permutation) -> Permutation:
    inv = np.empty(p.n, dtype=np.int64)
    inv[p.map] = np.arange(p.n)
    return Permutation(p.n, inv)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Composition applying q first, then p."""
    if p.n != q.n:
        raise DimensionMismatch("permutations act on different lengths")
    return Permutation(p.n, p.map[q.map])


def is_automorphism(p: Permutation, code, samples: int = 0,
                    rng: np.random.Generator | None = None) -> bool:
    """Check that p maps the code onto itself.

    Complete by linearity: permuting every generator row must give a
    codeword.  If samples > 0, random codewords are spot-checked first
    as a cheap pre-filter.
    """
    h = code.h_default
    g = code.generator
    if p.n != h.shape[1]:
        raise DimensionMismatch("permutation length != code blocklength")
    if samples and rng is not None:
        msgs = rng.integers(0, 2, size=(samples, g.shape[0]))
        words = (msgs @ g) % 2
        for w in words:
            if not is_codeword(h, apply_perm(p, w)):
                return False
    return all(is_codeword(h, apply_perm(p, row)) for row in g)


def require_automorphism(p: Permutation, code) -> None:
    if not is_automorphism(p, code):
        raise NotAnAutomorphism("permutation does not preserve the code")
