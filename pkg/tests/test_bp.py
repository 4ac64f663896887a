import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ensldpc.bp import (CLAMP, Schedule, TannerGraph, cn_update,
                        decode_flooding, decode_flooding_batch,
                        decode_layered, decode_layered_batch, hard_decision,
                        output_llr, shuffled_schedule,
                        top_to_bottom_schedule, vn_update)
from ensldpc.errors import InvalidSchedule

H_TREE = np.array([[1, 1, 0, 0],
                   [0, 1, 1, 1]], dtype=np.uint8)


def test_cn_update_two_equal_inputs():
    # 2 atanh(tanh(1)^2)
    assert cn_update([2.0, 2.0]) == pytest.approx(1.3250028, abs=1e-6)


def test_cn_update_zero_absorption():
    assert cn_update([0.0, 5.0, -3.0]) == 0.0


def test_cn_update_sign_rule():
    assert cn_update([4.0, -2.0]) < 0
    assert cn_update([-4.0, -2.0]) > 0


def test_cn_update_clamp_saturation():
    # saturated inputs hit the atanh guard: 2 atanh(1 - 1e-12) ~ 28.3
    out = cn_update([1000.0, 1000.0])
    assert 25.0 < out <= CLAMP


def test_vn_update_and_output_llr():
    assert vn_update(1.0, [2.0, -0.5]) == pytest.approx(2.5)
    assert output_llr(1.0, [2.0, -0.5]) == pytest.approx(2.5)
    assert vn_update(1.0, [2.0, -0.5], exclude_index=0) == pytest.approx(0.5)


def test_hard_decision_tie_to_zero():
    assert np.array_equal(hard_decision([0.0, -0.1, 0.1]), [0, 1, 0])


def test_posterior_matches_brute_force_on_tree():
    # exact bitwise marginalization over the 4 codewords of H_TREE
    rng = np.random.default_rng(2)
    graph = TannerGraph(H_TREE)
    words = np.array([[0, 0, 0, 0], [0, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
    assert not ((words @ H_TREE.T) % 2).any()
    for _ in range(50):
        l_ch = rng.normal(0.0, 2.0, size=4)
        loglik = -(words @ l_ch)  # log p(y|c) up to a constant
        w = np.exp(loglik - loglik.max())
        exact = np.array([
            np.log(w[words[:, i] == 0].sum() / w[words[:, i] == 1].sum())
            for i in range(4)])
        out = decode_flooding(graph, l_ch, 10, early_stop=False)
        assert np.allclose(out.posterior, exact, atol=1e-8)


def test_flooding_equals_single_layer_layered():
    rng = np.random.default_rng(4)
    h = (rng.random((8, 16)) < 0.3).astype(np.uint8)
    h[:, ~h.any(axis=0)] = 1
    h[~h.any(axis=1), 0] = 1
    graph = TannerGraph(h)
    sched = Schedule((tuple(range(8)),), n_l=8)
    l_ch = rng.normal(0.0, 2.0, size=(32, 16))
    for it in (1, 2, 5):
        a = decode_flooding_batch(graph, l_ch, it, early_stop=False)
        b = decode_layered_batch(graph, l_ch, sched, it, early_stop=False)
        assert np.allclose(a[3], b[3], atol=1e-10)
        assert np.array_equal(a[0], b[0])


def test_codeword_twist_symmetry():
    # twisting the LLRs by a codeword twists the posteriors the same way
    from ensldpc.gf2 import nullspace_basis
    rng = np.random.default_rng(9)
    h = (rng.random((6, 12)) < 0.35).astype(np.uint8)
    h[:, ~h.any(axis=0)] = 1
    graph = TannerGraph(h)
    ns = nullspace_basis(h)
    c = ns.sum(axis=0) % 2
    twist = 1.0 - 2.0 * c
    l_ch = rng.normal(0.0, 2.0, size=(16, 12))
    a = decode_flooding_batch(graph, l_ch, 6, early_stop=False)
    b = decode_flooding_batch(graph, l_ch * twist, 6, early_stop=False)
    assert np.allclose(a[3] * twist, b[3], atol=1e-10)
    assert np.array_equal(a[0] ^ c.astype(np.uint8), b[0])


def test_early_stop_returns_valid_word_noiseless():
    graph = TannerGraph(H_TREE)
    out = decode_flooding(graph, np.array([5.0, 5.0, 5.0, 5.0]), 8)
    assert out.valid
    assert out.iterations_used == 1
    assert not out.candidate.any()


def test_no_early_stop_runs_all_iterations():
    graph = TannerGraph(H_TREE)
    out = decode_flooding(graph, np.array([5.0, 5.0, 5.0, 5.0]), 8,
                          early_stop=False)
    assert out.iterations_used == 8
    assert out.valid


def test_batch_matches_scalar():
    rng = np.random.default_rng(11)
    h = (rng.random((10, 20)) < 0.25).astype(np.uint8)
    h[:, ~h.any(axis=0)] = 1
    h[~h.any(axis=1), 0] = 1
    graph = TannerGraph(h)
    l_ch = rng.normal(0.0, 1.5, size=(8, 20))
    bits, valid, iters, post = decode_flooding_batch(graph, l_ch, 5)
    for t in range(8):
        out = decode_flooding(graph, l_ch[t], 5)
        assert np.array_equal(out.candidate, bits[t])
        assert out.valid == valid[t]
        assert out.iterations_used == iters[t]
        assert np.allclose(out.posterior, post[t])


def test_schedule_validation():
    s = top_to_bottom_schedule(6, 2)
    s.validate(6)
    with pytest.raises(InvalidSchedule):
        s.validate(8)
    with pytest.raises(InvalidSchedule):
        Schedule(((0, 1), (1, 2)), n_l=2).validate(3)


def test_shuffled_schedule_is_layer_permutation():
    rng = np.random.default_rng(0)
    base = top_to_bottom_schedule(12, 3)
    s = shuffled_schedule(12, 3, rng)
    assert sorted(s.layers) == sorted(base.layers)


def test_layered_schedule_order_matters_on_loopy_graph():
    rng = np.random.default_rng(21)
    code_h = (rng.random((15, 30)) < 0.2).astype(np.uint8)
    code_h[:, ~code_h.any(axis=0)] = 1
    code_h[~code_h.any(axis=1), 0] = 1
    graph = TannerGraph(code_h)
    l_ch = rng.normal(0.0, 1.0, size=(64, 30))
    a = decode_layered_batch(graph, l_ch, top_to_bottom_schedule(15, 1), 2,
                             early_stop=False)
    rev = Schedule(tuple((c,) for c in reversed(range(15))), n_l=1)
    b = decode_layered_batch(graph, l_ch, rev, 2, early_stop=False)
    assert not np.allclose(a[3], b[3])


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_posterior_clamped(seed):
    rng = np.random.default_rng(seed)
    h = (rng.random((5, 10)) < 0.4).astype(np.uint8)
    h[:, ~h.any(axis=0)] = 1
    graph = TannerGraph(h)
    l_ch = rng.normal(0.0, 20.0, size=(4, 10))
    _, _, _, post = decode_flooding_batch(graph, l_ch, 6, early_stop=False)
    assert (np.abs(post) <= CLAMP + 1e-12).all()
