import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ensldpc import gf2
from ensldpc.errors import InsufficientRank


def random_matrix(rng, m, n):
    return rng.integers(0, 2, size=(m, n), dtype=np.uint8)


def test_rref_identity_block():
    a = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    r, pivots = gf2.rref(a)
    # pivots reduced above and below, leftmost-first
    assert np.array_equal(r, np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8))
    assert pivots == [0, 1]


def test_rref_idempotent_and_rank():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = random_matrix(rng, 7, 11)
        r, _ = gf2.rref(a)
        assert np.array_equal(gf2.rref(r)[0], r)
        assert gf2.rank(a) == gf2.rank(r) == int(r.any(axis=1).sum())


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_rref_preserves_row_space(seed):
    rng = np.random.default_rng(seed)
    a = random_matrix(rng, 6, 9)
    r, _ = gf2.rref(a)
    # every original row reduces to zero against the rref rows
    stacked = np.vstack([r[r.any(axis=1)], a])
    assert gf2.rank(stacked) == gf2.rank(a)


def test_nullspace_basis_orthogonal_and_complete():
    rng = np.random.default_rng(3)
    a = random_matrix(rng, 5, 12)
    ns = gf2.nullspace_basis(a)
    assert ns.shape[0] == 12 - gf2.rank(a)
    assert not ((ns @ a.T.astype(np.int64)) % 2).any()
    assert gf2.rank(ns) == ns.shape[0]


def test_syndrome_and_is_codeword():
    h = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    assert gf2.is_codeword(h, [1, 1, 1])
    assert not gf2.is_codeword(h, [1, 0, 0])
    s = gf2.syndrome_bits(h, [[1, 1, 1], [1, 0, 0]])
    assert np.array_equal(s, [[0, 0], [1, 0]])


def test_select_full_rank_rows_recovers_basis():
    rng = np.random.default_rng(1)
    pool = np.array(
        [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 1, 1]],
        dtype=np.uint8)
    idx = gf2.select_full_rank_rows(pool, 3, rng)
    assert gf2.rank(pool[idx]) == 3


def test_select_full_rank_rows_insufficient():
    pool = np.array([[1, 0], [1, 0], [1, 0]], dtype=np.uint8)
    with pytest.raises(InsufficientRank):
        gf2.select_full_rank_rows(pool, 2, np.random.default_rng(0))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_nullspace_words_are_codewords(seed):
    rng = np.random.default_rng(seed)
    h = random_matrix(rng, 4, 10)
    ns = gf2.nullspace_basis(h)
    if ns.shape[0] == 0:
        return
    coeffs = rng.integers(0, 2, size=(8, ns.shape[0]))
    words = (coeffs @ ns.astype(np.int64)) % 2
    assert not gf2.syndrome_bits(h, words).any()
