import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ensldpc.automorphisms import (Permutation, apply_perm, compose, identity,
                                   inverse, is_automorphism, qc_perm, s0_perm,
                                   s1_order, s1_perm, require_automorphism)
from ensldpc.codes import get_code
from ensldpc.errors import NotAnAutomorphism


def test_permutation_validates_bijection():
    with pytest.raises(Exception):
        Permutation(3, np.array([0, 0, 2]))


def test_apply_perm_scatter_convention():
    # out[p.map[i]] = v[i]
    p = Permutation(3, np.array([1, 2, 0]))
    assert np.array_equal(apply_perm(p, [10, 20, 30]), [30, 10, 20])


def test_apply_perm_batch():
    p = s0_perm(5, 2)
    v = np.arange(10).reshape(2, 5)
    out = apply_perm(p, v)
    assert np.array_equal(out[0], apply_perm(p, v[0]))


def test_inverse_and_compose():
    rng = np.random.default_rng(0)
    for _ in range(10):
        p = Permutation(8, rng.permutation(8))
        q = Permutation(8, rng.permutation(8))
        assert compose(p, inverse(p)) == identity(8)
        v = rng.normal(size=8)
        # compose(p, q) applies q first
        assert np.allclose(apply_perm(compose(p, q), v),
                           apply_perm(p, apply_perm(q, v)))


def test_s0_group_closure():
    n = 63
    assert compose(s0_perm(n, 5), s0_perm(n, 60)) == s0_perm(n, 2)
    assert s0_perm(n, 0) == identity(n)


def test_s1_order_and_closure():
    assert s1_order(63) == 6  # multiplicative order of 2 mod 63
    assert compose(s1_perm(63, 2), s1_perm(63, 5)) == s1_perm(63, 1)


def test_s0_exhaustive_on_cyclic_codes():
    for name in ("simplex63", "pg273"):
        code, _ = get_code(name)
        assert all(is_automorphism(s0_perm(code.n, d), code)
                   for d in range(code.n))


def test_s1_exhaustive_on_simplex():
    code, _ = get_code("simplex63")
    assert all(is_automorphism(s1_perm(63, d), code)
               for d in range(s1_order(63)))


def test_qc_exhaustive_on_5g():
    code, _ = get_code("5g132")
    assert all(is_automorphism(qc_perm(132, 11, d), code) for d in range(11))


def test_non_automorphism_detected():
    code, _ = get_code("simplex63")
    rng = np.random.default_rng(7)
    bad = Permutation(63, rng.permutation(63))
    # a random permutation of 63 positions is essentially never an
    # automorphism of the simplex code
    assert not is_automorphism(bad, code)
    with pytest.raises(NotAnAutomorphism):
        require_automorphism(bad, code)


def test_qc_perm_not_automorphism_of_cyclic_shift_group():
    # QC shift by 1 on the 5G code is not a plain cyclic shift
    code, _ = get_code("5g132")
    p = qc_perm(132, 11, 1)
    q = s0_perm(132, 1)
    assert p != q


@given(st.integers(0, 62), st.integers(0, 62))
@settings(max_examples=30, deadline=None)
def test_s0_commutes(d1, d2):
    n = 63
    assert compose(s0_perm(n, d1), s0_perm(n, d2)) == \
        compose(s0_perm(n, d2), s0_perm(n, d1))
